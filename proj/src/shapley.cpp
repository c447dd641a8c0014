#include "secgame/shapley.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "secgame/errors.hpp"
#include "secgame/matrix_game.hpp"

namespace secgame {
namespace {

std::string non_convergence_message(std::size_t iterations, double residual) {
  std::ostringstream os;
  os << "value iteration did not converge after " << iterations << " iterations (residual "
     << residual << ")";
  return os.str();
}

bool verbose() {
  const char* level = std::getenv("SECGAME_LOG");
  return level && std::string(level) == "debug";
}

template <typename Fn>
void for_each_state(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads <= 1 || count < 2) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  threads = std::min(threads, count);
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      for (std::size_t k = t; k < count; k += threads) fn(k);
    });
  }
}

void check_profile(const StochasticGame& game, const std::vector<Eigen::VectorXd>& strategies,
                   bool attacker) {
  const char* who = attacker ? "attacker" : "defender";
  if (strategies.size() != game.size()) {
    throw ValidationError({std::string(who) + " strategy profile has " +
                           std::to_string(strategies.size()) + " states, game has " +
                           std::to_string(game.size())});
  }
  std::vector<std::string> issues;
  for (std::size_t k = 0; k < game.size(); ++k) {
    const auto& e = game.elements[k];
    const auto& s = strategies[k];
    const std::size_t expected = attacker ? e.rows() : e.cols();
    if (static_cast<std::size_t>(s.size()) != expected) {
      issues.push_back(std::string(who) + " strategy at state " + std::to_string(k + 1) + " has " +
                       std::to_string(s.size()) + " entries, expected " + std::to_string(expected));
    } else if (!s.allFinite() || s.minCoeff() < -1e-12 || std::abs(s.sum() - 1.0) > 1e-9) {
      issues.push_back(std::string(who) + " strategy at state " + std::to_string(k + 1) +
                       " is not a probability vector");
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

}  // namespace

NonConvergenceError::NonConvergenceError(std::size_t iterations, double residual,
                                         Eigen::VectorXd last_values)
    : std::runtime_error(non_convergence_message(iterations, residual)),
      iterations_(iterations),
      residual_(residual),
      last_(std::move(last_values)) {}

Eigen::MatrixXd continuation_matrix(const GameElement& element, const Eigen::VectorXd& values) {
  Eigen::MatrixXd b = element.payoff;
  for (std::size_t i = 0; i < element.rows(); ++i) {
    for (std::size_t j = 0; j < element.cols(); ++j) {
      double sum = 0.0;
      for (const Outcome& o : element.outcomes_at(i, j)) {
        if (o.next) sum += o.probability * values[static_cast<Eigen::Index>(*o.next)];
      }
      b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += sum;
    }
  }
  return b;
}

SolveResult solve(const StochasticGame& game, const SolveOptions& options) {
  if (!(options.tolerance > 0.0)) throw ValidationError({"solver tolerance must be > 0"});
  const std::size_t p = game.size();
  const bool log = verbose();

  SolveResult result;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));
  Eigen::VectorXd next(v.size());
  double residual = std::numeric_limits<double>::infinity();
  std::size_t r = 0;
  while (residual >= options.tolerance) {
    if (r == options.max_iters) throw NonConvergenceError(r, residual, v);
    for_each_state(p, options.threads, [&](std::size_t k) {
      next[static_cast<Eigen::Index>(k)] =
          solve_matrix_game(continuation_matrix(game.elements[k], v)).value;
    });
    residual = (next - v).lpNorm<Eigen::Infinity>();
    result.residual_history.push_back(residual);
    v.swap(next);
    ++r;
    if (log) std::cerr << "[secgame] iteration " << r << " residual " << residual << '\n';
  }

  result.attacker_strategies.resize(p);
  result.defender_strategies.resize(p);
  for_each_state(p, options.threads, [&](std::size_t k) {
    auto sol = solve_matrix_game(continuation_matrix(game.elements[k], v));
    result.attacker_strategies[k] = std::move(sol.row_strategy);
    result.defender_strategies[k] = std::move(sol.col_strategy);
  });
  result.values = std::move(v);
  result.iterations = r;
  result.residual = residual;
  return result;
}

Eigen::VectorXd evaluate_strategies(const StochasticGame& game,
                                    const std::vector<Eigen::VectorXd>& attacker,
                                    const std::vector<Eigen::VectorXd>& defender) {
  check_profile(game, attacker, true);
  check_profile(game, defender, false);

  const auto p = static_cast<Eigen::Index>(game.size());
  Eigen::VectorXd reward = Eigen::VectorXd::Zero(p);
  std::vector<Eigen::Triplet<double>> entries;
  for (Eigen::Index k = 0; k < p; ++k) {
    entries.emplace_back(k, k, 1.0);
    const GameElement& e = game.elements[static_cast<std::size_t>(k)];
    const auto& y = attacker[static_cast<std::size_t>(k)];
    const auto& z = defender[static_cast<std::size_t>(k)];
    reward[k] = y.dot(e.payoff * z);
    for (std::size_t i = 0; i < e.rows(); ++i) {
      for (std::size_t j = 0; j < e.cols(); ++j) {
        const double weight = y[static_cast<Eigen::Index>(i)] * z[static_cast<Eigen::Index>(j)];
        if (weight == 0.0) continue;
        for (const Outcome& o : e.outcomes_at(i, j)) {
          if (o.next) entries.emplace_back(k, static_cast<Eigen::Index>(*o.next), -weight * o.probability);
        }
      }
    }
  }
  // Duplicate triplets are summed.
  Eigen::SparseMatrix<double> system(p, p);
  system.setFromTriplets(entries.begin(), entries.end());
  system.makeCompressed();

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(system);
  if (lu.info() != Eigen::Success) throw std::runtime_error("policy evaluation: singular system");
  Eigen::VectorXd values = lu.solve(reward);
  if (lu.info() != Eigen::Success) throw std::runtime_error("policy evaluation: solve failed");
  return values;
}

}  // namespace secgame
