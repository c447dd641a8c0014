#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "secgame/game.hpp"
#include "secgame/network.hpp"
#include "secgame/shapley.hpp"
#include "secgame/state_space.hpp"

namespace secgame {

inline constexpr std::string_view kConfigSchema = "secgame.config/1";

// Column sums off by at most this much are rescaled silently; larger
// deviations are rejected.
inline constexpr double kConfigRenormalizeTolerance = 1e-6;

struct NodeConfig {
  std::string name;
  double independent_asset = 0.0;
  NodeProbs probs;
};

struct EdgeConfig {
  std::string from;
  std::string to;
  double weight = 0.0;
};

// A game description as written in a config document. Edges reference nodes
// by name. Influence diagonals not listed explicitly are inferred as one minus
// the off-diagonal column sum.
struct GameConfig {
  std::vector<NodeConfig> nodes;
  std::vector<EdgeConfig> influence_edges;
  std::vector<EdgeConfig> support_edges;
  RestartConfig restart;
  SolveOptions solver;
  GameOptions game;
};

// Throws ParseError (with line and column) on malformed JSON and
// ValidationError listing every schema problem with its JSON path.
GameConfig parse_config(std::string_view text);
GameConfig load_config(const std::filesystem::path& path);

// All model-level problems (network and restart constraints), without
// throwing. Empty means build_network/build_state_space will succeed.
std::vector<std::string> validate_config(const GameConfig& config);

InfluenceNetwork build_network(const GameConfig& config);
StateSpace build_state_space(const GameConfig& config,
                             std::size_t max_nodes = StateSpace::kDefaultMaxNodes);

std::string read_file(const std::filesystem::path& path);

}  // namespace secgame
