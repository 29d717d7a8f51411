#include "xrego/rand_geometry.hpp"

#include <stdexcept>

namespace xrego {

Matrix gen_gaussian(const RngState& rng, int rows, int cols) {
    if (rows < 1 || cols < 1 || cols > rows) {
        throw std::invalid_argument("gen_gaussian: need 1 <= cols <= rows");
    }
    auto eng = rng.engine();
    std::normal_distribution<double> normal;
    Matrix A(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) {
            A(i, j) = normal(eng);
        }
    }
    return A;
}

Matrix gen_haar_orthogonal(const RngState& rng, int dim) {
    if (dim < 1) throw std::invalid_argument("gen_haar_orthogonal: dim < 1");
    const Matrix G = gen_gaussian(rng, dim, dim);
    Eigen::HouseholderQR<Matrix> qr(G);
    Matrix Q = qr.householderQ();
    const Vector diag = qr.matrixQR().diagonal();
    for (int j = 0; j < dim; ++j) {
        if (diag(j) < 0.0) Q.col(j) = -Q.col(j);
    }
    return Q;
}

AffineDistance affine_subspace_distance(const Matrix& A, const Vector& p, const Vector& q) {
    if (A.rows() != p.size() || A.rows() != q.size()) {
        throw std::invalid_argument("affine_subspace_distance: dimension mismatch");
    }
    const Vector b = q - p;
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(A);
    AffineDistance result;
    result.y = cod.solve(b);
    result.distance = (A * result.y - b).norm();
    result.rank_deficient = cod.rank() < A.cols();
    return result;
}

}  // namespace xrego
