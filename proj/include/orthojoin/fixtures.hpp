#pragma once

#include <Eigen/Dense>

#include "orthojoin/realization.hpp"

namespace orthojoin {

/// Exact matrices evaluated from closed-form radicals.
struct JoinFixture {
    Eigen::MatrixXd a_g;
    Eigen::MatrixXd a_h;
    Eigen::MatrixXd c;
    /// [[a_g, c], [c^T, -a_h]]
    Eigen::MatrixXd x;
    ZeroPattern pattern;
};

/// Orthogonal symmetric matrix with the pattern of C_8 v C_4, built with
/// lambda = sqrt(2) - 1, Z_2 = I_2 and Z_3 = (1/5)[[4, -3], [3, 4]].
JoinFixture cycles_fixture();

/// Rank-two matrix with the pattern of K_2 v mK_1.
///
/// lambda == 1 gives A = (1/20)[[4, 3], [3, -4]], B = sqrt(3)/(4 sqrt(m)) [1^T; 2 1^T],
/// X = [[A, B], [B^T, 0]] with nonzero eigenvalues {1, -1}. Other lambda in
/// (0, 1) give X = [[(lambda - 1) x x^T, sqrt(lambda) x y^T], [.., 0]] with
/// unit nowhere-zero x, y and nonzero eigenvalues {lambda, -1}.
/// Throws std::invalid_argument for m < 1 or lambda outside (0, 1].
JoinFixture rank_two_fixture(int m, double lambda = 1.0);

}  // namespace orthojoin
