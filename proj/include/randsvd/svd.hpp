#pragma once

#include <vector>

#include "randsvd/matrix.hpp"

namespace randsvd {

/// Compact SVD factors a = u * diag(sigma) * v^T with r = min(rows, cols)
/// triplets: u is m x r and v is n x r with orthonormal columns, sigma is
/// non-negative and sorted non-increasing (zeros mark null directions of
/// rank-deficient input).
struct SvdFactors {
    DenseMatrix u;
    std::vector<double> sigma;
    DenseMatrix v;
};

/// Maximum Jacobi sweeps before dense_svd gives up.
inline constexpr int kSvdMaxSweeps = 30;

/// Full compact SVD by one-sided Jacobi rotations on the taller
/// orientation (wide inputs are factored through their transpose and the
/// factor roles swapped back). Deterministic; throws ConvergenceError with
/// the sweep count if kSvdMaxSweeps is exceeded.
SvdFactors dense_svd(const DenseMatrix& a);

/// Grow u (orthonormal columns) to target_cols columns by deterministically
/// orthogonalizing canonical basis vectors against it.
DenseMatrix extend_orthonormal(const DenseMatrix& u, std::size_t target_cols);

}  // namespace randsvd
