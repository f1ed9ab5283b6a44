#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "treeh2/errors.hpp"

namespace treeh2 {

/// (N-1) x N orthonormal basis of the subspace orthogonal to the all-ones
/// vector: Q 1_N = 0, Q Q^T = I_{N-1}, Q^T Q = I_N - (1/N) 1 1^T.
struct ProjectionBasis {
    Eigen::MatrixXd q;
};

/// Deterministic construction: the Householder reflection mapping 1_N/sqrt(N)
/// to the first coordinate axis is orthogonal and symmetric; its rows 2..N
/// span the complement of 1_N.
inline ProjectionBasis projection_basis(int n) {
    if (n < 2) fail(Errc::NTooSmall, "projection basis needs N >= 2");
    Eigen::VectorXd u = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
    Eigen::VectorXd v = u;
    v(0) -= 1.0;
    const double beta = 2.0 / v.squaredNorm();
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) - beta * v * v.transpose();
    return ProjectionBasis{h.bottomRows(n - 1)};
}

/// Reduced Laplacian L_bar = Q L Q^T; shares the eigenvalues of L except one zero.
inline Eigen::MatrixXd reduce_with_basis(const Eigen::MatrixXd& l, const Eigen::MatrixXd& q) {
    return q * l * q.transpose();
}

} // namespace treeh2
