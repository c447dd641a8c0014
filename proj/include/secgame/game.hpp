#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "secgame/state_space.hpp"

namespace secgame {

// Which node an action targets; empty means "do nothing".
struct Action {
  std::optional<std::size_t> node;

  std::string label() const { return node ? std::to_string(*node + 1) : "none"; }
  friend bool operator==(const Action&, const Action&) = default;
};

enum class ActionMode {
  kReduced,  // alive nodes plus do-nothing
  kFull,     // every node plus do-nothing; attacks on dead nodes always fail
};

// Asset value at stake when a node falls.
enum class AssetValuation {
  kRenormalized,  // renormalized influence applied to original independent assets
  kAdjusted,      // Example-1 effective assets (independent assets shrink on removal)
};

std::string to_string(ActionMode mode);
std::string to_string(AssetValuation valuation);
std::optional<ActionMode> parse_action_mode(const std::string& text);
std::optional<AssetValuation> parse_asset_valuation(const std::string& text);

struct GameOptions {
  ActionMode action_mode = ActionMode::kReduced;
  AssetValuation asset_valuation = AssetValuation::kRenormalized;
};

// One branch of the lottery that follows an action pair. `next` is empty when
// the game ends. `reward` is what the attacker collects if this branch is the
// one realized; payoff(i, j) is the probability-weighted sum of rewards.
struct Outcome {
  std::optional<std::size_t> next;
  double probability = 0.0;
  double reward = 0.0;
};

// The matrix game played at one state.
struct GameElement {
  std::size_t state_index = 0;
  std::vector<Action> attacker_actions;
  std::vector<Action> defender_actions;
  Eigen::MatrixXd payoff;        // a_ij
  Eigen::MatrixXd success_prob;  // p_s for attack actions, 0 otherwise
  Eigen::MatrixXd end_prob;      // q^k0_ij
  // outcomes[i * defender_actions.size() + j], probabilities sum to 1.
  std::vector<std::vector<Outcome>> outcomes;

  std::size_t rows() const { return attacker_actions.size(); }
  std::size_t cols() const { return defender_actions.size(); }
  const std::vector<Outcome>& outcomes_at(std::size_t i, std::size_t j) const {
    return outcomes[i * cols() + j];
  }
  // q^kl_ij (dense view of the sparse outcome list).
  double transition(std::size_t i, std::size_t j, std::size_t next_state) const;
  // Σ_l q^kl_ij.
  double continuation(std::size_t i, std::size_t j) const;
};

struct StochasticGame {
  const StateSpace* space = nullptr;
  GameOptions options;
  std::vector<GameElement> elements;

  std::size_t size() const { return elements.size(); }
};

// Builds payoffs and transition lotteries for every state. `space` must
// outlive the returned game.
StochasticGame build_game(const StateSpace& space, const GameOptions& options = {});

// max over states and action pairs of the continuation probability; the
// value-iteration contraction modulus. Always < 1 for games built here.
double contraction_factor(const StochasticGame& game);

}  // namespace secgame
