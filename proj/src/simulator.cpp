#include "secgame/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <string>
#include <thread>

#include "secgame/errors.hpp"

namespace secgame {
namespace {

// Neumaier-compensated sum in index order.
double compensated_sum(const std::vector<double>& xs) {
  double sum = 0.0;
  double c = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    c += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + c;
}

std::size_t sample_index(const Eigen::VectorXd& probs, double u) {
  double acc = 0.0;
  const auto n = static_cast<std::size_t>(probs.size());
  for (std::size_t i = 0; i < n; ++i) {
    acc += probs[static_cast<Eigen::Index>(i)];
    if (u < acc) return i;
  }
  // Rounding left u above the total; take the last action with mass.
  for (std::size_t i = n; i-- > 0;) {
    if (probs[static_cast<Eigen::Index>(i)] > 0.0) return i;
  }
  return n - 1;
}

const Outcome& sample_outcome(const std::vector<Outcome>& outcomes, double u) {
  double acc = 0.0;
  for (const Outcome& o : outcomes) {
    acc += o.probability;
    if (u < acc) return o;
  }
  return outcomes.back();
}

struct Episode {
  double payoff = 0.0;
  double length = 0.0;
};

Episode play(const StochasticGame& game, const std::vector<Eigen::VectorXd>& attacker,
             const std::vector<Eigen::VectorXd>& defender, std::size_t start, SplitMix64& rng,
             std::size_t max_steps) {
  Episode ep;
  std::optional<std::size_t> state = start;
  std::size_t steps = 0;
  while (state) {
    if (steps == max_steps) {
      throw SimulationError("episode from state " + std::to_string(start + 1) + " exceeded " +
                            std::to_string(max_steps) + " steps");
    }
    const GameElement& e = game.elements[*state];
    const std::size_t i = sample_index(attacker[*state], rng.uniform());
    const std::size_t j = sample_index(defender[*state], rng.uniform());
    const Outcome& o = sample_outcome(e.outcomes_at(i, j), rng.uniform());
    ep.payoff += o.reward;
    state = o.next;
    ++steps;
  }
  ep.length = static_cast<double>(steps);
  return ep;
}

void check_inputs(const StochasticGame& game, const std::vector<Eigen::VectorXd>& attacker,
                  const std::vector<Eigen::VectorXd>& defender) {
  if (attacker.size() != game.size() || defender.size() != game.size()) {
    throw ValidationError({"strategy profiles must cover all " + std::to_string(game.size()) +
                           " states"});
  }
  for (std::size_t k = 0; k < game.size(); ++k) {
    if (static_cast<std::size_t>(attacker[k].size()) != game.elements[k].rows() ||
        static_cast<std::size_t>(defender[k].size()) != game.elements[k].cols()) {
      throw ValidationError({"strategy size mismatch at state " + std::to_string(k + 1)});
    }
  }
}

}  // namespace

StateSimulation simulate(const StochasticGame& game, const std::vector<Eigen::VectorXd>& attacker,
                         const std::vector<Eigen::VectorXd>& defender, std::size_t start_state,
                         const SimulationOptions& options) {
  if (options.episodes == 0) throw ValidationError({"episodes must be >= 1"});
  if (start_state >= game.size()) {
    throw ValidationError({"start state " + std::to_string(start_state + 1) + " out of range"});
  }
  check_inputs(game, attacker, defender);

  const SplitMix64 master(SplitMix64(options.seed).child_seed(start_state));
  std::vector<double> payoffs(options.episodes);
  std::vector<double> lengths(options.episodes);

  const auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t e = begin; e < end; ++e) {
      SplitMix64 rng(master.child_seed(e));
      const Episode ep = play(game, attacker, defender, start_state, rng, options.max_steps);
      payoffs[e] = ep.payoff;
      lengths[e] = ep.length;
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, options.episodes);
  if (threads == 1) {
    run_range(0, options.episodes);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> workers;
      const std::size_t chunk = (options.episodes + threads - 1) / threads;
      for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t begin = std::min(options.episodes, t * chunk);
        const std::size_t end = std::min(options.episodes, begin + chunk);
        workers.emplace_back([&, t, begin, end] {
          try {
            run_range(begin, end);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
    }
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  const auto count = static_cast<double>(options.episodes);
  StateSimulation out;
  out.start_state = start_state;
  out.episodes = options.episodes;
  out.mean_payoff = compensated_sum(payoffs) / count;
  out.mean_length = compensated_sum(lengths) / count;
  out.max_length = *std::max_element(lengths.begin(), lengths.end());
  if (options.episodes > 1) {
    std::vector<double> sq(options.episodes);
    for (std::size_t e = 0; e < options.episodes; ++e) {
      const double d = payoffs[e] - out.mean_payoff;
      sq[e] = d * d;
    }
    const double variance = compensated_sum(sq) / (count - 1.0);
    out.std_error = std::sqrt(variance / count);
  }
  return out;
}

SimulationReport simulate_states(const StochasticGame& game,
                                 const std::vector<Eigen::VectorXd>& attacker,
                                 const std::vector<Eigen::VectorXd>& defender,
                                 const std::vector<std::size_t>& start_states,
                                 const SimulationOptions& options) {
  SimulationReport report;
  report.seed = options.seed;
  for (std::size_t s : start_states) {
    report.per_state.push_back(simulate(game, attacker, defender, s, options));
  }
  return report;
}

}  // namespace secgame
