#include "secgame/strategies.hpp"

namespace secgame {
namespace {

Eigen::VectorXd pure(Eigen::Index size, Eigen::Index at) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(size);
  v[at] = 1.0;
  return v;
}

}  // namespace

StrategyProfile uniform_profile(const StochasticGame& game) {
  StrategyProfile p;
  for (const auto& e : game.elements) {
    p.attacker.push_back(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(e.rows()),
                                                   1.0 / static_cast<double>(e.rows())));
    p.defender.push_back(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(e.cols()),
                                                   1.0 / static_cast<double>(e.cols())));
  }
  return p;
}

StrategyProfile do_nothing_profile(const StochasticGame& game) {
  StrategyProfile p = uniform_profile(game);
  for (std::size_t k = 0; k < game.size(); ++k) {
    const auto rows = static_cast<Eigen::Index>(game.elements[k].rows());
    p.attacker[k] = pure(rows, rows - 1);  // do-nothing is always last
  }
  return p;
}

StrategyProfile greedy_profile(const StochasticGame& game) {
  StrategyProfile p;
  for (const auto& e : game.elements) {
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    e.payoff.rowwise().mean().maxCoeff(&row);
    e.payoff.colwise().maxCoeff().minCoeff(&col);
    p.attacker.push_back(pure(e.payoff.rows(), row));
    p.defender.push_back(pure(e.payoff.cols(), col));
  }
  return p;
}

Eigen::VectorXd expand_strategy(const std::vector<Action>& actions, const Eigen::VectorXd& strategy,
                                std::size_t node_count) {
  Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(node_count + 1));
  for (std::size_t a = 0; a < actions.size(); ++a) {
    const std::size_t slot = actions[a].node.value_or(node_count);
    full[static_cast<Eigen::Index>(slot)] += strategy[static_cast<Eigen::Index>(a)];
  }
  return full;
}

}  // namespace secgame
