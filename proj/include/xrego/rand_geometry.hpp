#pragma once

#include <Eigen/Dense>

#include "xrego/rng.hpp"

namespace xrego {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// D x d matrix of i.i.d. standard normals. Deterministic given rng.
// Requires 1 <= cols <= rows.
Matrix gen_gaussian(const RngState& rng, int rows, int cols);

// Haar-distributed orthogonal matrix: QR of a square Gaussian matrix with
// the sign convention that R has positive diagonal.
Matrix gen_haar_orthogonal(const RngState& rng, int dim);

struct AffineDistance {
    double distance = 0.0;  // min_y || A y + p - q ||_2
    Vector y;               // argmin; minimum-norm solution when A is rank deficient
    bool rank_deficient = false;
};

// Distance from q to the affine subspace p + range(A), via a complete
// orthogonal decomposition of A (never normal equations).
AffineDistance affine_subspace_distance(const Matrix& A, const Vector& p, const Vector& q);

}  // namespace xrego
