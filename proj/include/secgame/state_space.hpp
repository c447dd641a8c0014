#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "secgame/network.hpp"

namespace secgame {

// Per-state probabilities that a failed attack (p_r, p_e) or an idle turn
// (p_nothing_r, p_nothing_e) sends the system back to the all-healthy state
// or ends the game.
struct RestartParams {
  double p_r = 0.0;
  double p_e = 0.0;
  double p_nothing_r = 0.0;
  double p_nothing_e = 0.0;
};

struct RestartConfig {
  RestartParams initial{0.7, 0.3, 0.7, 0.3};  // the all-healthy state
  RestartParams other{0.2, 0.3, 0.2, 0.3};    // every other state
  std::map<std::uint32_t, RestartParams> overrides;  // keyed by NetworkState mask
};

// All 2^n states in binary order with node 0 as the most significant bit, so
// index 0 is all-healthy, index 2^n - 1 all-compromised, and for three nodes
// index 4 is (1,0,0). Reductions are computed once and cached.
class StateSpace {
 public:
  static constexpr std::size_t kDefaultMaxNodes = 16;

  StateSpace(InfluenceNetwork net, const RestartConfig& restart,
             std::size_t max_nodes = kDefaultMaxNodes);

  const InfluenceNetwork& network() const { return net_; }
  std::size_t node_count() const { return net_.node_count(); }
  std::size_t size() const { return reductions_.size(); }

  NetworkState state(std::size_t index) const;
  std::size_t index_of(NetworkState state) const;

  const ReducedNetwork& reduced(std::size_t index) const { return reductions_[index]; }
  const RestartParams& restart(std::size_t index) const { return restart_[index]; }

  // "1 (0,0,0)" style label, 1-based like the usual S_1..S_p numbering.
  std::string label(std::size_t index) const;

 private:
  InfluenceNetwork net_;
  std::vector<ReducedNetwork> reductions_;
  std::vector<RestartParams> restart_;
};

// state with `node` added. Throws DomainError if it is already compromised.
NetworkState successor(NetworkState state, std::size_t node);

// Violations of the restart constraints for one state.
std::vector<std::string> check_restart(const RestartParams& params, bool initial_state,
                                       const std::string& where);

}  // namespace secgame
