#pragma once

#include <vector>

#include <Eigen/Dense>

#include "secgame/game.hpp"

namespace secgame {

struct StrategyProfile {
  std::vector<Eigen::VectorXd> attacker;
  std::vector<Eigen::VectorXd> defender;
};

StrategyProfile uniform_profile(const StochasticGame& game);

// Attacker always idles; the defender plays uniformly.
StrategyProfile do_nothing_profile(const StochasticGame& game);

// Myopic pure play on instant payoffs: the attacker takes the row with the
// best mean payoff, the defender the column with the smallest worst case.
// Ties go to the lower index.
StrategyProfile greedy_profile(const StochasticGame& game);

// Widens a per-state strategy to one entry per node plus a trailing
// do-nothing entry, with zeros for actions the state does not offer.
Eigen::VectorXd expand_strategy(const std::vector<Action>& actions, const Eigen::VectorXd& strategy,
                                std::size_t node_count);

}  // namespace secgame
