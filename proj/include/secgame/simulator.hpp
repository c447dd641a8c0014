#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "secgame/game.hpp"

namespace secgame {

// SplitMix64: a 64-bit counter-based generator whose output also serves to
// derive independent child seeds.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Seed for the child stream `index`; does not advance this generator.
  std::uint64_t child_seed(std::uint64_t index) const {
    SplitMix64 g(state_ ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
    g();
    return g();
  }

 private:
  std::uint64_t state_;
};

struct SimulationOptions {
  std::size_t episodes = 100000;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::size_t max_steps = 1000000;  // per episode
};

struct StateSimulation {
  std::size_t start_state = 0;
  std::size_t episodes = 0;
  double mean_payoff = 0.0;
  double std_error = 0.0;  // sample std / sqrt(episodes)
  double mean_length = 0.0;
  double max_length = 0.0;
};

struct SimulationReport {
  std::uint64_t seed = 0;
  std::vector<StateSimulation> per_state;
};

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Plays `options.episodes` independent episodes from `start_state`. At each
// step both actions are drawn from the stationary strategies, then one branch
// of the outcome lottery is drawn; the attacker collects the branch's reward
// (the asset value when the attack succeeds). Episode e uses a generator
// seeded from (seed, start_state, e), so results do not depend on threading.
StateSimulation simulate(const StochasticGame& game, const std::vector<Eigen::VectorXd>& attacker,
                         const std::vector<Eigen::VectorXd>& defender, std::size_t start_state,
                         const SimulationOptions& options);

SimulationReport simulate_states(const StochasticGame& game,
                                 const std::vector<Eigen::VectorXd>& attacker,
                                 const std::vector<Eigen::VectorXd>& defender,
                                 const std::vector<std::size_t>& start_states,
                                 const SimulationOptions& options);

}  // namespace secgame
