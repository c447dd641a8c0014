#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "secgame/config.hpp"
#include "secgame/report.hpp"
#include "secgame/shapley.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("secgame-cli-" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

Run run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string("\"") + SECGAME_CLI + "\" " + args + " >\"" + out.string() +
                          "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = secgame::read_file(out);
  r.err = secgame::read_file(err);
  return r;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return "\"" + p.string() + "\"";
}

std::string example() { return "\"" + testing::example_config() + "\""; }

bool has(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("validate prints derived quantities") {
  const Run r = run("validate " + example());
  CHECK(r.code == 0);
  CHECK(has(r.out, "OK: 8 states"));
  CHECK(has(r.out, "11"));
  CHECK(has(r.out, "22"));
  CHECK(has(r.out, "5 (1,0,0)"));
}

TEST_CASE("validate reports every problem and exits with 3") {
  json doc = json::parse(secgame::read_file(testing::example_config()));
  doc["influence_edges"].push_back({{"from", "1"}, {"to", "1"}, {"weight", 0.8}});
  doc["nodes"][2]["probs"]["p_d1"] = 0.45;
  const Run r = run("validate " + write_temp("bad.json", doc.dump()));
  CHECK(r.code == 3);
  CHECK(has(r.out, "node '1'"));
}

TEST_CASE("exit codes") {
  CHECK(run("validate " + write_temp("broken.json", "{\"nodes\": [")).code == 2);
  CHECK(run("validate /nonexistent/config.json").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("solve " + example() + " --max-iters 3").code == 4);
  CHECK(run("solve " + example() + " --tol 1").code == 0);

  json wide = json::parse(secgame::read_file(testing::example_config()));
  wide["influence_edges"] = json::array();
  wide["support_edges"] = json::array();
  json nodes = json::array();
  for (int i = 0; i < 17; ++i) {
    json node = wide["nodes"][0];
    node["name"] = "n" + std::to_string(i);
    nodes.push_back(node);
  }
  wide["nodes"] = nodes;
  CHECK(run("describe " + write_temp("wide.json", wide.dump())).code == 6);

  const std::string bogus = write_temp("bogus-strategies.json", "{\"schema\": \"secgame.solve/1\", \"states\": []}");
  const Run s = run("simulate " + example() + " --episodes 10 --strategies " + bogus);
  CHECK(s.code == 5);
  CHECK(has(s.err, "schema error"));
}

TEST_CASE("solve prints the strategy and value tables") {
  const Run r = run("solve " + example());
  REQUIRE(r.code == 0);
  CHECK(has(r.out, "1 (0,0,0)"));
  CHECK(has(r.out, "19.607"));
  CHECK(has(r.out, "8 (1,1,1)"));
  CHECK(has(r.out, "7.84"));
  CHECK(has(r.out, "Converged in 43 iterations"));
}

TEST_CASE("unit tolerance stops early") {
  const fs::path out = scratch() / "loose.json";
  const Run r = run("solve " + example() + " --tol 1 --out \"" + out.string() + "\"");
  REQUIRE(r.code == 0);
  const json doc = json::parse(secgame::read_file(out));
  CHECK(doc["iterations"].get<int>() == 7);
  CHECK(doc["residual"].get<double>() < 1.0);
}

TEST_CASE("solution file reproduces the values under policy evaluation") {
  const fs::path out = scratch() / "solution.json";
  const Run r = run("solve " + example() + " --tol 1e-10 --out \"" + out.string() + "\"");
  REQUIRE(r.code == 0);
  const json doc = json::parse(secgame::read_file(out));
  const auto model = testing::load_example();
  const auto profile = secgame::strategies_from_json(doc, model.game);
  const Eigen::VectorXd exact = secgame::evaluate_strategies(model.game, profile.attacker, profile.defender);
  const Eigen::VectorXd listed = secgame::values_from_json(doc);
  CHECK((exact - listed).cwiseAbs().maxCoeff() < 1e-6);

  const Run sim = run("simulate " + example() + " --episodes 2000 --seed 3 --strategies \"" +
                      out.string() + "\"");
  CHECK(sim.code == 0);
}

TEST_CASE("simulate is reproducible for a fixed seed") {
  const std::string args = "simulate " + example() + " --episodes 1 --seed 7 --start-state all --out -";
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const json doc = json::parse(a.out.substr(a.out.find("{\n")));
  CHECK(doc["seed"] == 7);
  CHECK(doc["states"].size() == 8);
}

TEST_CASE("idle attacker simulation collects nothing") {
  const Run r = run("simulate " + example() + " --episodes 500 --strategies do-nothing --start-state all --out -");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out.substr(r.out.find("{\n")));
  for (const auto& st : doc["states"]) {
    CHECK(st["mean_payoff"].get<double>() == 0.0);
  }
}

TEST_CASE("describe dumps the game") {
  const Run r = run("describe " + example() + " --dump-game -");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["schema"] == "secgame.game/1");
  CHECK(doc["states"].size() == 8);
}

TEST_CASE("matrix game subcommand") {
  const Run r = run("matgame solve " + write_temp("mp.txt", "1 -1\n-1 1\n"));
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["value"].get<double>() == doctest::Approx(0.0));
  CHECK(doc["row_strategy"][0].get<double>() == doctest::Approx(0.5));
  CHECK(run("matgame solve " + write_temp("bad.txt", "1 2\n3\n")).code == 2);
}
