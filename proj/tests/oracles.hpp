#pragma once
// Independent reference computations used only by the tests. Nothing here
// calls into the library code paths it is used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

// One node at a time, following the worked example: every surviving node j
// loses the share w_dj of its independent asset, then each surviving column
// is rescaled to sum to one. Supports are recomputed from scratch over the
// surviving supporters.
struct SequentialReduction {
  std::vector<std::size_t> alive;
  std::vector<double> adjusted;   // per original node index (dead = unused)
  Matrix influence;               // full n x n, dead rows/cols zero
  std::vector<double> supports;   // per original node index
  std::vector<double> effective;  // per original node index
};

inline SequentialReduction remove_in_order(const Matrix& w, const std::vector<double>& s,
                                           const Matrix& h, const std::vector<std::size_t>& order) {
  const std::size_t n = s.size();
  SequentialReduction r;
  r.adjusted = s;
  r.influence = w;
  std::vector<bool> dead(n, false);
  for (std::size_t d : order) {
    for (std::size_t j = 0; j < n; ++j) {
      if (dead[j] || j == d) continue;
      const double share = r.influence[d][j];
      r.adjusted[j] *= (1.0 - share);
      const double remaining = 1.0 - share;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == d || dead[i]) continue;
        r.influence[i][j] = remaining > 0.0 ? r.influence[i][j] / remaining : 0.0;
      }
    }
    dead[d] = true;
    for (std::size_t k = 0; k < n; ++k) {
      r.influence[d][k] = 0.0;
      r.influence[k][d] = 0.0;
    }
    r.adjusted[d] = 0.0;
  }
  r.supports.assign(n, 0.0);
  r.effective.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (dead[j]) continue;
    r.alive.push_back(j);
    for (std::size_t i = 0; i < n; ++i) {
      if (!dead[i]) r.supports[j] += h[i][j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (dead[i]) continue;
    for (std::size_t j = 0; j < n; ++j) r.effective[i] += r.influence[i][j] * r.adjusted[j];
  }
  return r;
}

// Simultaneous fictitious play. Returns the empirical security bounds of the
// average strategies; the game value lies between them.
struct FictitiousPlay {
  double lower = 0.0;
  double upper = 0.0;
  double estimate() const { return 0.5 * (lower + upper); }
};

inline FictitiousPlay fictitious_play(const Matrix& b, std::size_t rounds) {
  const std::size_t m = b.size();
  const std::size_t n = b.front().size();
  std::vector<double> row_gain(m, 0.0);  // payoff of each row vs the column history
  std::vector<double> col_loss(n, 0.0);  // payoff conceded by each column vs the row history
  std::size_t row = 0;
  std::size_t col = 0;
  for (std::size_t t = 0; t < rounds; ++t) {
    for (std::size_t i = 0; i < m; ++i) row_gain[i] += b[i][col];
    for (std::size_t j = 0; j < n; ++j) col_loss[j] += b[row][j];
    row = static_cast<std::size_t>(std::max_element(row_gain.begin(), row_gain.end()) - row_gain.begin());
    col = static_cast<std::size_t>(std::min_element(col_loss.begin(), col_loss.end()) - col_loss.begin());
  }
  FictitiousPlay fp;
  fp.lower = *std::min_element(col_loss.begin(), col_loss.end()) / static_cast<double>(rounds);
  fp.upper = *std::max_element(row_gain.begin(), row_gain.end()) / static_cast<double>(rounds);
  return fp;
}

// Pure saddle point by exhaustive search: max of row minima equals min of
// column maxima.
inline bool pure_saddle(const Matrix& b, double& value) {
  double maximin = -std::numeric_limits<double>::infinity();
  for (const auto& row : b) maximin = std::max(maximin, *std::min_element(row.begin(), row.end()));
  double minimax = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < b.front().size(); ++j) {
    double col_max = -std::numeric_limits<double>::infinity();
    for (const auto& row : b) col_max = std::max(col_max, row[j]);
    minimax = std::min(minimax, col_max);
  }
  value = maximin;
  return maximin == minimax;
}

// Closed-form mixed equilibrium of a 2x2 game without a pure saddle.
struct TwoByTwo {
  double value;
  double row_first;  // probability of row 0
  double col_first;  // probability of column 0
};

inline TwoByTwo mixed_2x2(double a, double b, double c, double d) {
  const double denom = a - b - c + d;
  return {(a * d - b * c) / denom, (d - c) / denom, (d - b) / denom};
}

// Random column-stochastic influence, sub-stochastic support and ordered
// compromise probabilities. Self-influence is occasionally zero so that a
// column can lose all of its mass.
struct RandomNetwork {
  Matrix w;
  std::vector<double> s;
  Matrix h;
  std::vector<std::array<double, 4>> probs;  // p_d1, p_n1, p_d0, p_n0
};

inline RandomNetwork random_network(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RandomNetwork net;
  net.w.assign(n, std::vector<double>(n, 0.0));
  net.h.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool edge = i == j ? u(rng) > 0.1 : u(rng) < 0.4;
      if (edge) {
        net.w[i][j] = 0.05 + u(rng);
        sum += net.w[i][j];
      }
    }
    if (sum == 0.0) {
      net.w[j][j] = 1.0;
      sum = 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) net.w[i][j] /= sum;

    double hsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (u(rng) < 0.5) {
        net.h[i][j] = u(rng);
        hsum += net.h[i][j];
      }
    }
    const double cap = u(rng);
    if (hsum > cap) {
      for (std::size_t i = 0; i < n; ++i) net.h[i][j] *= cap / hsum;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    net.s.push_back(100.0 * u(rng));
    const double d1 = 0.01 + 0.3 * u(rng);
    const double n1 = d1 + 0.01 + 0.2 * u(rng);
    const double d0 = d1 + 0.01 + 0.2 * u(rng);
    const double n0 = std::max(n1, d0) + 0.01 + 0.2 * u(rng);
    net.probs.push_back({d1, n1, d0, n0});
  }
  return net;
}

}  // namespace oracle
