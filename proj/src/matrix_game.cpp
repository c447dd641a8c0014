#include "secgame/matrix_game.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "secgame/errors.hpp"

namespace secgame {
namespace {

constexpr double kPivotTolerance = 1e-12;

void clean_distribution(Eigen::VectorXd& p) {
  p = p.cwiseMax(0.0);
  const double total = p.sum();
  if (total > 0.0) {
    p /= total;
  } else {
    p.setConstant(1.0 / static_cast<double>(p.size()));
  }
}

}  // namespace

MatrixGameSolution solve_matrix_game(const Eigen::MatrixXd& payoff) {
  const Eigen::Index m = payoff.rows();
  const Eigen::Index n = payoff.cols();
  if (m == 0 || n == 0) throw ValidationError({"matrix game has no rows or columns"});
  if (!payoff.allFinite()) throw ValidationError({"matrix game has non-finite entries"});

  // Shift so every entry is >= 1; the column player's problem
  //   max Σw  s.t.  B'w <= 1, w >= 0
  // then has value 1/val(B') and its duals are the row player's weights.
  const double shift = 1.0 - payoff.minCoeff();

  // Tableau: m constraint rows over [w (n) | slack (m) | rhs], then the
  // objective row holding reduced costs of the minimization of -Σw.
  const Eigen::Index width = n + m + 1;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, width);
  t.topLeftCorner(m, n) = payoff.array() + shift;
  t.block(0, n, m, m).setIdentity();
  t.col(width - 1).head(m).setOnes();
  t.row(m).head(n).setConstant(-1.0);

  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index r = 0; r < m; ++r) basis[static_cast<std::size_t>(r)] = n + r;

  for (;;) {
    Eigen::Index enter = -1;
    for (Eigen::Index c = 0; c < n + m; ++c) {
      if (t(m, c) < -kPivotTolerance) {
        enter = c;
        break;
      }
    }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < m; ++r) {
      const double a = t(r, enter);
      if (a <= kPivotTolerance) continue;
      const double ratio = t(r, width - 1) / a;
      if (ratio < best_ratio - kPivotTolerance ||
          (ratio <= best_ratio + kPivotTolerance && leave >= 0 &&
           basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
        best_ratio = std::min(best_ratio, ratio);
        leave = r;
      }
    }
    // B' > 0 keeps the feasible region bounded, so a leaving row always exists.
    if (leave < 0) throw std::logic_error("simplex: unbounded matrix-game LP");

    t.row(leave) /= t(leave, enter);
    for (Eigen::Index r = 0; r <= m; ++r) {
      if (r != leave && t(r, enter) != 0.0) t.row(r) -= t(r, enter) * t.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  for (Eigen::Index r = 0; r < m; ++r) {
    const Eigen::Index var = basis[static_cast<std::size_t>(r)];
    if (var < n) w[var] = t(r, width - 1);
  }
  Eigen::VectorXd u = t.row(m).segment(n, m).transpose();

  const double total = t(m, width - 1);  // Σw = Σu = 1/val(B')
  MatrixGameSolution sol;
  sol.value = 1.0 / total - shift;
  sol.row_strategy = std::move(u);
  sol.col_strategy = std::move(w);
  clean_distribution(sol.row_strategy);
  clean_distribution(sol.col_strategy);
  return sol;
}

double row_guarantee(const Eigen::MatrixXd& payoff, const Eigen::VectorXd& row_strategy) {
  return (row_strategy.transpose() * payoff).minCoeff();
}

double col_guarantee(const Eigen::MatrixXd& payoff, const Eigen::VectorXd& col_strategy) {
  return (payoff * col_strategy).maxCoeff();
}

}  // namespace secgame
