#include <doctest.h>

#include "secgame/errors.hpp"
#include "secgame/matrix_game.hpp"
#include "secgame/shapley.hpp"
#include "secgame/strategies.hpp"
#include "test_support.hpp"

using namespace secgame;
using doctest::Approx;

namespace {

// Reference value vector of the example game, rounded to 4 decimals.
const double kReferenceValues[] = {19.6078, 15.8301, 17.9557, 12.3392, 17.9659, 13.0283, 15.3228, 7.8431};

}  // namespace

TEST_CASE("example game reproduces the reference value vector") {
  const auto model = testing::load_example();
  const SolveResult r = solve(model.game, {1e-4, 10000});
  for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(r.values[static_cast<Eigen::Index>(k)] - kReferenceValues[k]) < 1e-3);
  CHECK(r.iterations >= 40);
  CHECK(r.iterations <= 80);
  CHECK(r.residual < 1e-4);
  CHECK(r.residual_history.size() == r.iterations);

  const Eigen::VectorXd attacker = expand_strategy(model.game.elements[0].attacker_actions, r.attacker_strategies[0], 3);
  const Eigen::VectorXd defender = expand_strategy(model.game.elements[0].defender_actions, r.defender_strategies[0], 3);
  const Eigen::Vector4d attacker_expected(0.6126, 0, 0.3874, 0);
  const Eigen::Vector4d defender_expected(0.0702, 0, 0.9298, 0);
  CHECK((attacker - attacker_expected).cwiseAbs().maxCoeff() < 1e-3);
  CHECK((defender - defender_expected).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("all-compromised value is 0.4 of the initial value") {
  const auto model = testing::load_example();
  const SolveResult r = solve(model.game, {1e-12, 10000});
  CHECK(std::abs(r.values[7] - 0.4 * r.values[0]) < 1e-6);
}

TEST_CASE("zero-asset network has zero value") {
  InfluenceNetwork net(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2),
                       Eigen::MatrixXd::Zero(2, 2), std::vector<NodeProbs>(2, {0.1, 0.2, 0.3, 0.4}));
  const StateSpace space(net, RestartConfig{});
  const StochasticGame game = build_game(space);
  const SolveResult r = solve(game);
  CHECK(r.values.cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.iterations == 1);
  for (const auto& s : r.attacker_strategies) CHECK(std::abs(s.sum() - 1.0) < 1e-12);
}

TEST_CASE("non-convergence carries the last iterate") {
  const auto model = testing::load_example();
  try {
    solve(model.game, {1e-4, 3});
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& e) {
    CHECK(e.iterations() == 3);
    CHECK(e.residual() >= 1e-4);
    CHECK(e.last_values().size() == 8);
    CHECK(e.last_values()[0] > 0.0);
  }
  CHECK_THROWS_AS(solve(model.game, {0.0, 10}), ValidationError);
}

TEST_CASE("loose tolerance stops at the first sweep below it") {
  const auto model = testing::load_example();
  const SolveResult loose = solve(model.game, {1.0, 10000});
  const auto& h = loose.residual_history;
  REQUIRE(h.size() == loose.iterations);
  CHECK(h.back() < 1.0);
  for (std::size_t t = 0; t + 1 < h.size(); ++t) CHECK(h[t] >= 1.0);
  // The first sweep moves v from zero to the one-shot values, whose largest
  // entry exceeds 5, so a unit tolerance cannot be met in fewer sweeps.
  CHECK(h.front() > 5.0);
  CHECK(loose.iterations == 7);
  CHECK(loose.iterations < solve(model.game, {1e-4, 10000}).iterations);
}

TEST_CASE("contraction, fixed point and saddle guarantees") {
  const auto model = testing::load_example();
  const double tol = 1e-4;
  const SolveResult r = solve(model.game, {tol, 10000});
  const double gamma = contraction_factor(model.game);
  CHECK(gamma == Approx(0.865).epsilon(1e-12));

  const auto& h = r.residual_history;
  REQUIRE(h.size() > 11);
  for (std::size_t t = h.size() - 10; t < h.size(); ++t) CHECK(h[t] <= (gamma + 0.05) * h[t - 1]);

  for (std::size_t k = 0; k < model.game.size(); ++k) {
    const Eigen::MatrixXd b = continuation_matrix(model.game.elements[k], r.values);
    const double v = r.values[static_cast<Eigen::Index>(k)];
    CHECK(std::abs(solve_matrix_game(b).value - v) <= tol * (1 + gamma) / (1 - gamma));
    CHECK(row_guarantee(b, r.attacker_strategies[k]) >= v - 10 * tol);
    CHECK(col_guarantee(b, r.defender_strategies[k]) <= v + 10 * tol);
  }
}

TEST_CASE("more compromised nodes never raise the value on the example") {
  const auto model = testing::load_example();
  const SolveResult r = solve(model.game);
  const StateSpace& space = *model.space;
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = 0; b < 8; ++b) {
      const auto ma = space.state(a).mask();
      const auto mb = space.state(b).mask();
      if (a != b && (ma & mb) == ma) CHECK(r.values[static_cast<Eigen::Index>(b)] < r.values[static_cast<Eigen::Index>(a)]);
    }
  }
}

TEST_CASE("threaded sweeps give identical results") {
  const auto model = testing::load_example();
  const SolveResult one = solve(model.game, {1e-6, 10000, 1});
  const SolveResult many = solve(model.game, {1e-6, 10000, 3});
  CHECK(one.iterations == many.iterations);
  CHECK(one.values == many.values);
  for (std::size_t k = 0; k < 8; ++k) CHECK(one.attacker_strategies[k] == many.attacker_strategies[k]);
}

TEST_CASE("full action mode has the same values") {
  auto options = secgame::load_config(testing::example_config()).game;
  const auto reduced = testing::load_example(options);
  options.action_mode = ActionMode::kFull;
  const auto full = testing::load_example(options);
  const SolveResult a = solve(reduced.game, {1e-10, 10000});
  const SolveResult b = solve(full.game, {1e-10, 10000});
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("policy evaluation of the optimal strategies matches value iteration") {
  const auto model = testing::load_example();
  const SolveResult r = solve(model.game, {1e-10, 10000});
  const Eigen::VectorXd v = evaluate_strategies(model.game, r.attacker_strategies, r.defender_strategies);
  CHECK((v - r.values).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("policy evaluation edge cases") {
  const auto model = testing::load_example();
  const auto idle = do_nothing_profile(model.game);
  CHECK(evaluate_strategies(model.game, idle.attacker, idle.defender).cwiseAbs().maxCoeff() == 0.0);

  // Single state by hand: v = a + q v with q the stay probability.
  const auto uniform = uniform_profile(model.game);
  const Eigen::VectorXd v = evaluate_strategies(model.game, uniform.attacker, uniform.defender);
  CHECK(v[7] == Approx(0.2 * v[0] / 0.5).epsilon(1e-12));

  auto bad = uniform;
  bad.attacker[2] = Eigen::VectorXd::Zero(bad.attacker[2].size());
  CHECK_THROWS_AS(evaluate_strategies(model.game, bad.attacker, bad.defender), ValidationError);
  bad.attacker.pop_back();
  CHECK_THROWS_AS(evaluate_strategies(model.game, bad.attacker, bad.defender), ValidationError);
}
