#pragma once

#include <Eigen/Dense>

namespace secgame {

// Value and one optimal mixed-strategy pair of a zero-sum matrix game. The row
// player maximizes.
struct MatrixGameSolution {
  double value = 0.0;
  Eigen::VectorXd row_strategy;
  Eigen::VectorXd col_strategy;
};

// Solves max_y min_z yᵀBz by the simplex method on the positively shifted
// game. Pivoting uses the smallest-index rule, so degenerate games always
// produce the same optimum for the same input. Throws ValidationError on an
// empty matrix or non-finite entries.
MatrixGameSolution solve_matrix_game(const Eigen::MatrixXd& payoff);

// min_j (yᵀB)_j: what the row strategy guarantees against every pure reply.
double row_guarantee(const Eigen::MatrixXd& payoff, const Eigen::VectorXd& row_strategy);

// max_i (Bz)_i: the most the column strategy can be made to concede.
double col_guarantee(const Eigen::MatrixXd& payoff, const Eigen::VectorXd& col_strategy);

}  // namespace secgame
