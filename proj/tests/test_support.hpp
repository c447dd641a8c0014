#pragma once

#include <array>
#include <memory>
#include <random>
#include <string>

#include "oracles.hpp"
#include "secgame/config.hpp"
#include "secgame/game.hpp"
#include "secgame/network.hpp"
#include "secgame/state_space.hpp"

namespace testing {

inline std::string source_path(const std::string& relative) {
  return std::string(SECGAME_SOURCE_DIR) + "/" + relative;
}

inline std::string example_config() { return source_path("configs/example-3node.json"); }

// Game plus the state space it points into.
struct Model {
  std::unique_ptr<secgame::StateSpace> space;
  secgame::StochasticGame game;
};

inline Model load_example(secgame::GameOptions options) {
  Model m;
  m.space = std::make_unique<secgame::StateSpace>(
      secgame::build_state_space(secgame::load_config(example_config())));
  m.game = secgame::build_game(*m.space, options);
  return m;
}

inline Model load_example() { return load_example(secgame::load_config(example_config()).game); }

// The 3-node network used throughout, built directly.
inline secgame::InfluenceNetwork example_network() {
  Eigen::MatrixXd w(3, 3);
  w << 0.9, 0.2, 0.0, 0.0, 0.7, 0.0, 0.1, 0.1, 1.0;
  Eigen::MatrixXd h(3, 3);
  h << 0.7, 0.0, 0.0, 0.2, 0.5, 0.0, 0.1, 0.3, 0.9;
  Eigen::VectorXd s(3);
  s << 10, 10, 20;
  return secgame::InfluenceNetwork(w, s, h, std::vector<secgame::NodeProbs>(3, {0.2, 0.4, 0.5, 0.7}));
}

inline secgame::InfluenceNetwork to_network(const oracle::RandomNetwork& r) {
  const auto n = static_cast<Eigen::Index>(r.s.size());
  Eigen::MatrixXd w(n, n);
  Eigen::MatrixXd h(n, n);
  Eigen::VectorXd s(n);
  std::vector<secgame::NodeProbs> probs;
  for (Eigen::Index i = 0; i < n; ++i) {
    s[i] = r.s[static_cast<std::size_t>(i)];
    const auto& p = r.probs[static_cast<std::size_t>(i)];
    probs.push_back({p[0], p[1], p[2], p[3]});
    for (Eigen::Index j = 0; j < n; ++j) {
      w(i, j) = r.w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      h(i, j) = r.h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return secgame::InfluenceNetwork(w, s, h, probs);
}

inline secgame::RestartConfig random_restart(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.01, 0.49);
  secgame::RestartConfig rc;
  rc.initial = {u(rng), u(rng), u(rng), u(rng)};
  rc.other = {u(rng), u(rng), u(rng), u(rng)};
  const std::uint32_t states = 1u << n;
  for (int k = 0; k < 3; ++k) {
    const std::uint32_t mask = static_cast<std::uint32_t>(rng() % states);
    if (mask != 0) rc.overrides[mask] = {u(rng), u(rng), u(rng), u(rng)};
  }
  return rc;
}

}  // namespace testing
