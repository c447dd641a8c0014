#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace secgame {

inline constexpr double kStochasticTolerance = 1e-9;

// Compromise probabilities for one node. "d"/"n" = defended / not defended,
// "1"/"0" = full support / no support.
struct NodeProbs {
  double p_d1 = 0.0;
  double p_n1 = 0.0;
  double p_d0 = 0.0;
  double p_n0 = 0.0;
};

// Static linear influence network. Entry (i, j) of `influence` is the
// influence of node i on node j, entry (i, j) of `support` the support node i
// gives node j. Instances are validated on construction and immutable.
class InfluenceNetwork {
 public:
  // Throws ValidationError listing every violated invariant.
  InfluenceNetwork(Eigen::MatrixXd influence, Eigen::VectorXd independent_assets,
                   Eigen::MatrixXd support, std::vector<NodeProbs> node_probs);

  // Returns a description of each violated invariant, empty when valid.
  static std::vector<std::string> check(const Eigen::MatrixXd& influence,
                                        const Eigen::VectorXd& independent_assets,
                                        const Eigen::MatrixXd& support,
                                        const std::vector<NodeProbs>& node_probs);

  std::size_t node_count() const { return static_cast<std::size_t>(assets_.size()); }
  const Eigen::MatrixXd& influence() const { return influence_; }
  const Eigen::VectorXd& independent_assets() const { return assets_; }
  const Eigen::MatrixXd& support() const { return support_; }
  const std::vector<NodeProbs>& node_probs() const { return probs_; }

 private:
  Eigen::MatrixXd influence_;
  Eigen::VectorXd assets_;
  Eigen::MatrixXd support_;
  std::vector<NodeProbs> probs_;
};

// Set of compromised nodes. Bit i of the mask is node i (0-based).
class NetworkState {
 public:
  static constexpr std::size_t kMaxNodes = 32;

  constexpr NetworkState() = default;
  constexpr explicit NetworkState(std::uint32_t mask) : mask_(mask) {}

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr bool compromised(std::size_t node) const { return (mask_ >> node) & 1u; }
  int compromised_count() const;
  NetworkState with(std::size_t node) const { return NetworkState(mask_ | (1u << node)); }

  // "(1,0,0)" style label with node 0 leftmost.
  std::string bit_label(std::size_t node_count) const;
  // "100" style key with node 0 leftmost.
  std::string bit_string(std::size_t node_count) const;

  friend constexpr bool operator==(NetworkState, NetworkState) = default;

 private:
  std::uint32_t mask_ = 0;
};

// Derived quantities for the network with the compromised nodes removed.
// All per-node vectors are indexed by position in `alive`.
struct ReducedNetwork {
  NetworkState state;
  std::vector<std::size_t> alive;
  // s_j scaled by the surviving mass of column j (removed shares are lost).
  Eigen::VectorXd adjusted_assets;
  // Influence restricted to alive nodes, columns rescaled to sum to 1.
  Eigen::MatrixXd renormalized_influence;
  // renormalized_influence * adjusted_assets.
  Eigen::VectorXd effective_assets;
  // renormalized_influence * original independent assets of alive nodes.
  Eigen::VectorXd renormalized_assets;
  // Column sums of the support matrix over alive supporters (not normalized).
  Eigen::VectorXd supports;

  // Position of `node` in `alive`, or -1 when compromised.
  std::ptrdiff_t position(std::size_t node) const;
};

// x = I s.
Eigen::VectorXd effective_assets(const InfluenceNetwork& net);

ReducedNetwork reduce(const InfluenceNetwork& net, NetworkState state);

// Affine compromise probability of `target` given its current support.
// Throws DomainError when `target` is compromised in `reduced`.
double success_probability(const InfluenceNetwork& net, const ReducedNetwork& reduced,
                           std::size_t target, bool defended);

}  // namespace secgame
