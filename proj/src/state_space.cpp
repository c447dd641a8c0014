#include "secgame/state_space.hpp"

#include <sstream>
#include <utility>

#include "secgame/errors.hpp"

namespace secgame {

std::vector<std::string> check_restart(const RestartParams& params, bool initial_state,
                                       const std::string& where) {
  std::vector<std::string> issues;
  const auto in_open_unit = [](double p) { return p > 0.0 && p < 1.0; };
  const std::pair<const char*, double> fields[] = {{"p_r", params.p_r},
                                                   {"p_e", params.p_e},
                                                   {"p_nothing_r", params.p_nothing_r},
                                                   {"p_nothing_e", params.p_nothing_e}};
  for (const auto& [name, value] : fields) {
    if (!in_open_unit(value)) {
      std::ostringstream os;
      os << where << ": " << name << " = " << value << " outside (0,1)";
      issues.push_back(os.str());
    }
  }
  // Equality is allowed only where restart and stay are the same transition.
  const auto check_sum = [&](const char* name, double sum) {
    const bool ok = initial_state ? sum <= 1.0 + 1e-12 : sum < 1.0;
    if (!ok) {
      std::ostringstream os;
      os << where << ": " << name << " = " << sum
         << (initial_state ? " exceeds 1" : " must be < 1");
      issues.push_back(os.str());
    }
  };
  check_sum("p_r + p_e", params.p_r + params.p_e);
  check_sum("p_nothing_r + p_nothing_e", params.p_nothing_r + params.p_nothing_e);
  return issues;
}

StateSpace::StateSpace(InfluenceNetwork net, const RestartConfig& restart, std::size_t max_nodes)
    : net_(std::move(net)) {
  const std::size_t n = net_.node_count();
  if (n > max_nodes) {
    throw CapacityError("network has " + std::to_string(n) + " nodes; the state space is capped at " +
                        std::to_string(max_nodes) + " nodes (2^" + std::to_string(max_nodes) +
                        " states)");
  }
  const std::size_t p = std::size_t{1} << n;

  for (const auto& [mask, params] : restart.overrides) {
    if (mask >= p) {
      throw ValidationError({"restart override for mask " + std::to_string(mask) +
                             " does not name a state of a " + std::to_string(n) + "-node network"});
    }
  }

  std::vector<std::string> issues;
  reductions_.reserve(p);
  restart_.reserve(p);
  for (std::size_t k = 0; k < p; ++k) {
    const NetworkState s = state(k);
    reductions_.push_back(reduce(net_, s));
    RestartParams params = k == 0 ? restart.initial : restart.other;
    if (auto it = restart.overrides.find(s.mask()); it != restart.overrides.end()) {
      params = it->second;
    }
    auto found = check_restart(params, k == 0, "state " + label(k));
    issues.insert(issues.end(), found.begin(), found.end());
    restart_.push_back(params);
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

NetworkState StateSpace::state(std::size_t index) const {
  const std::size_t n = node_count();
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if ((index >> (n - 1 - i)) & 1u) mask |= 1u << i;
  }
  return NetworkState(mask);
}

std::size_t StateSpace::index_of(NetworkState state) const {
  const std::size_t n = node_count();
  std::size_t index = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (state.compromised(i)) index |= std::size_t{1} << (n - 1 - i);
  }
  return index;
}

std::string StateSpace::label(std::size_t index) const {
  return std::to_string(index + 1) + " " + state(index).bit_label(node_count());
}

NetworkState successor(NetworkState state, std::size_t node) {
  if (node >= NetworkState::kMaxNodes || state.compromised(node)) {
    throw DomainError("node " + std::to_string(node + 1) + " is already compromised");
  }
  return state.with(node);
}

}  // namespace secgame
