#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "secgame/game.hpp"

namespace secgame {

struct SolveOptions {
  double tolerance = 1e-4;
  std::size_t max_iters = 10000;
  // Matrix games within one sweep are independent; > 1 splits them across
  // threads. Results do not depend on this setting.
  std::size_t threads = 1;
};

struct SolveResult {
  Eigen::VectorXd values;
  std::vector<Eigen::VectorXd> attacker_strategies;
  std::vector<Eigen::VectorXd> defender_strategies;
  std::size_t iterations = 0;
  double residual = 0.0;
  std::vector<double> residual_history;  // ‖v^{r+1} − v^r‖_∞ per sweep
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(std::size_t iterations, double residual, Eigen::VectorXd last_values);
  std::size_t iterations() const { return iterations_; }
  double residual() const { return residual_; }
  const Eigen::VectorXd& last_values() const { return last_; }

 private:
  std::size_t iterations_;
  double residual_;
  Eigen::VectorXd last_;
};

// b_ij = a_ij + Σ_l q^kl_ij v_l for one element.
Eigen::MatrixXd continuation_matrix(const GameElement& element, const Eigen::VectorXd& values);

// Shapley value iteration from v = 0 until the sup-norm change drops below the
// tolerance; strategies are then read off the matrix games at the final v.
SolveResult solve(const StochasticGame& game, const SolveOptions& options = {});

// Expected total payoff from each start state under fixed stationary
// strategies, from the linear system (I − Q) v = r.
Eigen::VectorXd evaluate_strategies(const StochasticGame& game,
                                    const std::vector<Eigen::VectorXd>& attacker,
                                    const std::vector<Eigen::VectorXd>& defender);

}  // namespace secgame
