#include "secgame/game.hpp"

#include <algorithm>

namespace secgame {

std::string to_string(ActionMode mode) { return mode == ActionMode::kFull ? "full" : "reduced"; }

std::string to_string(AssetValuation valuation) {
  return valuation == AssetValuation::kAdjusted ? "adjusted" : "renormalized";
}

std::optional<ActionMode> parse_action_mode(const std::string& text) {
  if (text == "reduced") return ActionMode::kReduced;
  if (text == "full") return ActionMode::kFull;
  return std::nullopt;
}

std::optional<AssetValuation> parse_asset_valuation(const std::string& text) {
  if (text == "renormalized") return AssetValuation::kRenormalized;
  if (text == "adjusted") return AssetValuation::kAdjusted;
  return std::nullopt;
}

double GameElement::transition(std::size_t i, std::size_t j, std::size_t next_state) const {
  double q = 0.0;
  for (const Outcome& o : outcomes_at(i, j)) {
    if (o.next == next_state) q += o.probability;
  }
  return q;
}

double GameElement::continuation(std::size_t i, std::size_t j) const {
  double q = 0.0;
  for (const Outcome& o : outcomes_at(i, j)) {
    if (o.next) q += o.probability;
  }
  return q;
}

namespace {

std::vector<Action> actions_for(const ReducedNetwork& reduced, std::size_t node_count,
                                ActionMode mode) {
  std::vector<Action> actions;
  if (mode == ActionMode::kFull) {
    for (std::size_t i = 0; i < node_count; ++i) actions.push_back({i});
  } else {
    for (std::size_t i : reduced.alive) actions.push_back({i});
  }
  actions.push_back({});
  return actions;
}

// Lottery after a failed attack or an idle turn: restart, stay, or end. At the
// initial state restart and stay coincide and are merged.
void add_fallback(std::vector<Outcome>& out, double mass, std::size_t k, double p_restart,
                  double p_end) {
  if (k == 0) {
    out.push_back({0, mass * (1.0 - p_end), 0.0});
  } else {
    out.push_back({0, mass * p_restart, 0.0});
    out.push_back({k, mass * (1.0 - p_restart - p_end), 0.0});
  }
  out.push_back({std::nullopt, mass * p_end, 0.0});
}

GameElement build_element(const StateSpace& space, std::size_t k, const GameOptions& options) {
  const InfluenceNetwork& net = space.network();
  const ReducedNetwork& reduced = space.reduced(k);
  const RestartParams& restart = space.restart(k);
  const Eigen::VectorXd& assets = options.asset_valuation == AssetValuation::kAdjusted
                                      ? reduced.effective_assets
                                      : reduced.renormalized_assets;

  GameElement e;
  e.state_index = k;
  e.attacker_actions = actions_for(reduced, net.node_count(), options.action_mode);
  e.defender_actions = actions_for(reduced, net.node_count(), options.action_mode);
  const auto m = static_cast<Eigen::Index>(e.rows());
  const auto n = static_cast<Eigen::Index>(e.cols());
  e.payoff = Eigen::MatrixXd::Zero(m, n);
  e.success_prob = Eigen::MatrixXd::Zero(m, n);
  e.end_prob = Eigen::MatrixXd::Zero(m, n);
  e.outcomes.resize(e.rows() * e.cols());

  for (Eigen::Index i = 0; i < m; ++i) {
    const Action& attack = e.attacker_actions[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j) {
      const Action& defend = e.defender_actions[static_cast<std::size_t>(j)];
      auto& out = e.outcomes[static_cast<std::size_t>(i * n + j)];

      if (!attack.node) {
        add_fallback(out, 1.0, k, restart.p_nothing_r, restart.p_nothing_e);
      } else if (const std::ptrdiff_t pos = reduced.position(*attack.node); pos < 0) {
        add_fallback(out, 1.0, k, restart.p_r, restart.p_e);
      } else {
        const std::size_t t = *attack.node;
        const double ps = success_probability(net, reduced, t, defend.node == t);
        const double gain = assets[pos];
        e.success_prob(i, j) = ps;
        e.payoff(i, j) = ps * gain;
        out.push_back({space.index_of(successor(reduced.state, t)), ps, gain});
        add_fallback(out, 1.0 - ps, k, restart.p_r, restart.p_e);
      }
      std::erase_if(out, [](const Outcome& o) { return o.probability <= 0.0; });

      double end = 0.0;
      for (const Outcome& o : out) {
        if (!o.next) end += o.probability;
      }
      e.end_prob(i, j) = end;
    }
  }
  return e;
}

}  // namespace

StochasticGame build_game(const StateSpace& space, const GameOptions& options) {
  StochasticGame game;
  game.space = &space;
  game.options = options;
  game.elements.reserve(space.size());
  for (std::size_t k = 0; k < space.size(); ++k) {
    game.elements.push_back(build_element(space, k, options));
  }
  return game;
}

double contraction_factor(const StochasticGame& game) {
  double gamma = 0.0;
  for (const GameElement& e : game.elements) {
    for (std::size_t i = 0; i < e.rows(); ++i) {
      for (std::size_t j = 0; j < e.cols(); ++j) gamma = std::max(gamma, e.continuation(i, j));
    }
  }
  return gamma;
}

}  // namespace secgame
