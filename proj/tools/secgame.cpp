// secgame: solve and simulate zero-sum stochastic security games on linear
// influence networks.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "secgame/config.hpp"
#include "secgame/errors.hpp"
#include "secgame/game.hpp"
#include "secgame/matrix_game.hpp"
#include "secgame/report.hpp"
#include "secgame/shapley.hpp"
#include "secgame/simulator.hpp"
#include "secgame/strategies.hpp"

namespace {

using namespace secgame;

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kParse = 2,
  kValidation = 3,
  kNonConvergence = 4,
  kSchema = 5,
  kCapacity = 6,
};

struct ModelFlags {
  std::string config;
  std::optional<std::string> action_mode;
};

struct SolveFlags {
  std::optional<double> tol;
  std::optional<std::size_t> max_iters;
  std::size_t threads = 1;
};

void write_json(const std::string& path, const nlohmann::json& doc) {
  if (path == "-") {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

GameOptions game_options(const GameConfig& config, const ModelFlags& flags) {
  GameOptions opts = config.game;
  if (flags.action_mode) {
    auto mode = parse_action_mode(*flags.action_mode);
    if (!mode) throw ParseError("--action-mode must be 'reduced' or 'full'");
    opts.action_mode = *mode;
  }
  return opts;
}

SolveOptions solve_options(const GameConfig& config, const SolveFlags& flags) {
  SolveOptions opts = config.solver;
  if (flags.tol) opts.tolerance = *flags.tol;
  if (flags.max_iters) opts.max_iters = *flags.max_iters;
  opts.threads = flags.threads;
  return opts;
}

int cmd_validate(const ModelFlags& flags) {
  const GameConfig config = load_config(flags.config);
  const auto issues = validate_config(config);
  if (!issues.empty()) {
    std::cout << "INVALID: " << issues.size() << " problem(s)\n";
    for (const auto& issue : issues) std::cout << "  - " << issue << '\n';
    return kValidation;
  }
  const StateSpace space = build_state_space(config);
  write_network_summary(std::cout, space);
  const StochasticGame game = build_game(space, game_options(config, flags));

  double min_end = 1.0;
  double max_mass_error = 0.0;
  for (const auto& e : game.elements) {
    min_end = std::min(min_end, e.end_prob.minCoeff());
    for (std::size_t i = 0; i < e.rows(); ++i) {
      for (std::size_t j = 0; j < e.cols(); ++j) {
        double mass = 0.0;
        for (const auto& o : e.outcomes_at(i, j)) mass += o.probability;
        max_mass_error = std::max(max_mass_error, std::abs(mass - 1.0));
      }
    }
  }
  std::cout << "\nChecks\n"
            << "  influence columns stochastic        ok\n"
            << "  supports within [0,1]               ok\n"
            << "  compromise probability ordering     ok\n"
            << "  restart/end probabilities           ok\n"
            << "  transition rows sum to 1            max error " << max_mass_error << '\n'
            << "  minimum end probability             " << min_end << '\n'
            << "  contraction factor                  " << contraction_factor(game) << '\n'
            << "OK: " << space.size() << " states\n";
  return kOk;
}

int cmd_describe(const ModelFlags& flags, const std::string& dump) {
  const GameConfig config = load_config(flags.config);
  const StateSpace space = build_state_space(config);
  const StochasticGame game = build_game(space, game_options(config, flags));
  if (dump.empty() || dump != "-") {
    write_network_summary(std::cout, space);
    std::cout << "\n" << space.size() << " states, action mode " << to_string(game.options.action_mode)
              << ", asset valuation " << to_string(game.options.asset_valuation)
              << ", contraction factor " << contraction_factor(game) << '\n';
  }
  if (!dump.empty()) write_json(dump, game_to_json(game));
  return kOk;
}

int cmd_solve(const ModelFlags& flags, const SolveFlags& sflags, const std::string& out,
              const std::string& dump) {
  const GameConfig config = load_config(flags.config);
  const StateSpace space = build_state_space(config);
  const StochasticGame game = build_game(space, game_options(config, flags));
  if (!dump.empty()) write_json(dump, game_to_json(game));

  const SolveOptions opts = solve_options(config, sflags);
  const SolveResult result = solve(game, opts);
  write_strategy_table(std::cout, game, result.attacker_strategies, true);
  std::cout << '\n';
  write_strategy_table(std::cout, game, result.defender_strategies, false);
  std::cout << '\n';
  write_value_table(std::cout, game, result.values);
  std::cout << "\nConverged in " << result.iterations << " iterations (residual " << result.residual
            << ", tolerance " << opts.tolerance << ")\n";
  if (!out.empty()) write_json(out, solve_to_json(game, result, opts));
  return kOk;
}

int cmd_simulate(const ModelFlags& flags, const SolveFlags& sflags, const SimulationOptions& sim,
                 const std::string& start, const std::string& strategies, const std::string& out) {
  const GameConfig config = load_config(flags.config);
  const StateSpace space = build_state_space(config);
  const StochasticGame game = build_game(space, game_options(config, flags));

  StrategyProfile profile;
  if (strategies == "optimal") {
    const SolveResult result = solve(game, solve_options(config, sflags));
    profile = {result.attacker_strategies, result.defender_strategies};
  } else if (strategies == "uniform") {
    profile = uniform_profile(game);
  } else if (strategies == "do-nothing") {
    profile = do_nothing_profile(game);
  } else if (strategies == "greedy") {
    profile = greedy_profile(game);
  } else {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_file(strategies));
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("strategy file: " + std::string(e.what()));
    }
    profile = strategies_from_json(doc, game);
  }

  std::vector<std::size_t> starts;
  if (start == "all") {
    for (std::size_t k = 0; k < game.size(); ++k) starts.push_back(k);
  } else {
    std::size_t k = 0;
    try {
      k = std::stoul(start);
    } catch (const std::exception&) {
      throw ParseError("--start-state must be a state number or 'all'");
    }
    if (k < 1 || k > game.size()) {
      throw ParseError("--start-state must be between 1 and " + std::to_string(game.size()));
    }
    starts.push_back(k - 1);
  }

  const Eigen::VectorXd expected = evaluate_strategies(game, profile.attacker, profile.defender);
  const SimulationReport report = simulate_states(game, profile.attacker, profile.defender, starts, sim);
  write_simulation_table(std::cout, game, report, expected);
  if (!out.empty()) write_json(out, simulation_to_json(game, report, expected, strategies));
  return kOk;
}

int cmd_matgame(const std::string& path) {
  const Eigen::MatrixXd b = parse_matrix(read_file(path));
  const MatrixGameSolution sol = solve_matrix_game(b);
  nlohmann::json doc{{"value", sol.value},
                     {"row_strategy", std::vector<double>(sol.row_strategy.begin(), sol.row_strategy.end())},
                     {"col_strategy", std::vector<double>(sol.col_strategy.begin(), sol.col_strategy.end())},
                     {"row_guarantee", row_guarantee(b, sol.row_strategy)},
                     {"col_guarantee", col_guarantee(b, sol.col_strategy)}};
  std::cout << doc.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-sum stochastic security games on linear influence networks"};
  app.require_subcommand(1);

  ModelFlags model;
  SolveFlags solver;
  std::string out;
  std::string dump;

  const auto add_model = [&](CLI::App* cmd) {
    cmd->add_option("config", model.config, "Game configuration (JSON)")->required();
    cmd->add_option("--action-mode", model.action_mode, "reduced | full");
  };
  const auto add_solver = [&](CLI::App* cmd) {
    cmd->add_option("--tol", solver.tol, "Stop when the sup-norm change is below this");
    cmd->add_option("--max-iters", solver.max_iters, "Iteration limit");
    cmd->add_option("--threads", solver.threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand("validate", "Check a configuration and print derived quantities");
  add_model(validate);

  auto* describe = app.add_subcommand("describe", "Print the state space and optionally dump the game");
  add_model(describe);
  describe->add_option("--dump-game", dump, "Write the game as JSON ('-' for stdout)");

  auto* solve_cmd = app.add_subcommand("solve", "Compute the value vector and optimal strategies");
  add_model(solve_cmd);
  add_solver(solve_cmd);
  solve_cmd->add_option("--out", out, "Write the solution as JSON ('-' for stdout)");
  solve_cmd->add_option("--dump-game", dump, "Write the game as JSON");

  SimulationOptions sim;
  std::string start = "all";
  std::string strategies = "optimal";
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo play-out under fixed strategies");
  add_model(simulate_cmd);
  add_solver(simulate_cmd);
  simulate_cmd->add_option("--episodes", sim.episodes, "Episodes per start state")
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", sim.seed, "Master random seed");
  simulate_cmd->add_option("--start-state", start, "State number (1-based) or 'all'");
  simulate_cmd->add_option("--strategies", strategies,
                           "optimal | uniform | do-nothing | greedy | path to a solve document");
  simulate_cmd->add_option("--out", out, "Write the report as JSON ('-' for stdout)");

  auto* matgame = app.add_subcommand("matgame", "Matrix-game utilities");
  matgame->require_subcommand(1);
  std::string matrix_path;
  auto* matgame_solve = matgame->add_subcommand("solve", "Solve a zero-sum matrix game");
  matgame_solve->add_option("matrix", matrix_path, "Matrix file (JSON rows or whitespace text)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    sim.threads = solver.threads;
    if (*validate) return cmd_validate(model);
    if (*describe) return cmd_describe(model, dump);
    if (*solve_cmd) return cmd_solve(model, solver, out, dump);
    if (*simulate_cmd) return cmd_simulate(model, solver, sim, start, strategies, out);
    if (*matgame_solve) return cmd_matgame(matrix_path);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kSchema;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kValidation;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const NonConvergenceError& e) {
    std::cerr << e.what() << "\nlast iterate:";
    for (Eigen::Index k = 0; k < e.last_values().size(); ++k) std::cerr << ' ' << e.last_values()[k];
    std::cerr << '\n';
    return kNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
