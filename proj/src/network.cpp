#include "secgame/network.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "secgame/errors.hpp"

namespace secgame {
namespace {

std::string node_name(Eigen::Index j) { return "node " + std::to_string(j + 1); }

}  // namespace

std::vector<std::string> InfluenceNetwork::check(const Eigen::MatrixXd& influence,
                                                 const Eigen::VectorXd& independent_assets,
                                                 const Eigen::MatrixXd& support,
                                                 const std::vector<NodeProbs>& node_probs) {
  std::vector<std::string> issues;
  const Eigen::Index n = independent_assets.size();
  if (n == 0) {
    issues.emplace_back("network has no nodes");
    return issues;
  }
  if (static_cast<std::size_t>(n) > NetworkState::kMaxNodes) {
    issues.emplace_back("network has " + std::to_string(n) + " nodes, more than " +
                        std::to_string(NetworkState::kMaxNodes));
  }
  if (influence.rows() != n || influence.cols() != n) {
    issues.emplace_back("influence matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (support.rows() != n || support.cols() != n) {
    issues.emplace_back("support matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (node_probs.size() != static_cast<std::size_t>(n)) {
    issues.emplace_back("expected " + std::to_string(n) + " probability quadruples, got " +
                        std::to_string(node_probs.size()));
  }
  if (!issues.empty()) return issues;

  for (Eigen::Index j = 0; j < n; ++j) {
    if (!std::isfinite(independent_assets[j]) || independent_assets[j] < 0.0) {
      issues.emplace_back(node_name(j) + ": independent asset must be finite and >= 0");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const double w = influence(i, j);
      if (!std::isfinite(w) || w < 0.0 || w > 1.0 + kStochasticTolerance) {
        std::ostringstream os;
        os << "influence (" << i + 1 << "," << j + 1 << ") = " << w << " outside [0,1]";
        issues.push_back(os.str());
      }
      const double h = support(i, j);
      if (!std::isfinite(h) || h < 0.0 || h > 1.0) {
        std::ostringstream os;
        os << "support (" << i + 1 << "," << j + 1 << ") = " << h << " outside [0,1]";
        issues.push_back(os.str());
      }
    }
    const double column = influence.col(j).sum();
    if (std::abs(column - 1.0) > kStochasticTolerance) {
      std::ostringstream os;
      os << "influence column " << j + 1 << " sums to " << column << ", expected 1";
      issues.push_back(os.str());
    }
    const double h_sum = support.col(j).sum();
    if (h_sum < -kStochasticTolerance || h_sum > 1.0 + kStochasticTolerance) {
      std::ostringstream os;
      os << "support column " << j + 1 << " sums to " << h_sum << ", outside [0,1]";
      issues.push_back(os.str());
    }

    const NodeProbs& p = node_probs[static_cast<std::size_t>(j)];
    for (double q : {p.p_d1, p.p_n1, p.p_d0, p.p_n0}) {
      if (!(q > 0.0 && q < 1.0)) {
        issues.emplace_back(node_name(j) + ": compromise probabilities must lie in (0,1)");
        break;
      }
    }
    if (!(p.p_d1 < p.p_n1)) issues.emplace_back(node_name(j) + ": requires p_d1 < p_n1");
    if (!(p.p_d0 < p.p_n0)) issues.emplace_back(node_name(j) + ": requires p_d0 < p_n0");
    if (!(p.p_d1 < p.p_d0)) issues.emplace_back(node_name(j) + ": requires p_d1 < p_d0");
    if (!(p.p_n1 < p.p_n0)) issues.emplace_back(node_name(j) + ": requires p_n1 < p_n0");
  }
  return issues;
}

InfluenceNetwork::InfluenceNetwork(Eigen::MatrixXd influence, Eigen::VectorXd independent_assets,
                                   Eigen::MatrixXd support, std::vector<NodeProbs> node_probs)
    : influence_(std::move(influence)),
      assets_(std::move(independent_assets)),
      support_(std::move(support)),
      probs_(std::move(node_probs)) {
  if (auto issues = check(influence_, assets_, support_, probs_); !issues.empty()) {
    throw ValidationError(std::move(issues));
  }
}

int NetworkState::compromised_count() const { return std::popcount(mask_); }

std::string NetworkState::bit_label(std::size_t node_count) const {
  std::string out = "(";
  for (std::size_t i = 0; i < node_count; ++i) {
    if (i) out += ',';
    out += compromised(i) ? '1' : '0';
  }
  return out + ")";
}

std::string NetworkState::bit_string(std::size_t node_count) const {
  std::string out;
  for (std::size_t i = 0; i < node_count; ++i) out += compromised(i) ? '1' : '0';
  return out;
}

std::ptrdiff_t ReducedNetwork::position(std::size_t node) const {
  for (std::size_t a = 0; a < alive.size(); ++a) {
    if (alive[a] == node) return static_cast<std::ptrdiff_t>(a);
  }
  return -1;
}

Eigen::VectorXd effective_assets(const InfluenceNetwork& net) {
  return net.influence() * net.independent_assets();
}

ReducedNetwork reduce(const InfluenceNetwork& net, NetworkState state) {
  const std::size_t n = net.node_count();
  ReducedNetwork r;
  r.state = state;
  for (std::size_t i = 0; i < n; ++i) {
    if (!state.compromised(i)) r.alive.push_back(i);
  }
  const auto m = static_cast<Eigen::Index>(r.alive.size());
  const auto& w = net.influence();
  const auto& s = net.independent_assets();
  const auto& h = net.support();

  r.adjusted_assets = Eigen::VectorXd::Zero(m);
  r.renormalized_influence = Eigen::MatrixXd::Zero(m, m);
  r.supports = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd original(m);

  // Removing nodes one at a time (scale s_j by 1 - w_dj, then renormalize the
  // column) telescopes to scaling s_j by the surviving column mass.
  for (Eigen::Index b = 0; b < m; ++b) {
    const std::size_t j = r.alive[static_cast<std::size_t>(b)];
    double mass = 0.0;
    double support_sum = 0.0;
    for (Eigen::Index a = 0; a < m; ++a) {
      const std::size_t i = r.alive[static_cast<std::size_t>(a)];
      mass += w(i, j);
      support_sum += h(i, j);
    }
    bool lost = false;
    for (std::size_t i = 0; i < n; ++i) lost = lost || (state.compromised(i) && w(i, j) > 0.0);
    original[b] = s[j];
    r.supports[b] = support_sum;
    if (!lost) {
      r.adjusted_assets[b] = s[j];
      for (Eigen::Index a = 0; a < m; ++a) {
        r.renormalized_influence(a, b) = w(r.alive[static_cast<std::size_t>(a)], j);
      }
      continue;
    }
    if (mass <= 0.0) continue;  // every influencer of j is gone
    r.adjusted_assets[b] = s[j] * mass;
    for (Eigen::Index a = 0; a < m; ++a) {
      r.renormalized_influence(a, b) = w(r.alive[static_cast<std::size_t>(a)], j) / mass;
    }
  }
  r.effective_assets = r.renormalized_influence * r.adjusted_assets;
  r.renormalized_assets = r.renormalized_influence * original;
  return r;
}

double success_probability(const InfluenceNetwork& net, const ReducedNetwork& reduced,
                           std::size_t target, bool defended) {
  const std::ptrdiff_t pos = reduced.position(target);
  if (pos < 0) {
    throw DomainError("node " + std::to_string(target + 1) + " is already compromised");
  }
  const NodeProbs& p = net.node_probs()[target];
  const double support = reduced.supports[pos];
  return defended ? p.p_d0 - (p.p_d0 - p.p_d1) * support
                  : p.p_n0 - (p.p_n0 - p.p_n1) * support;
}

}  // namespace secgame
