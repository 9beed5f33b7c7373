#pragma once

#include "randsvd/matrix.hpp"

namespace randsvd {

/// Thin QR factors: q has orthonormal columns (m x n), r is upper
/// triangular (n x n) with a non-negative diagonal. Entries of r strictly
/// below the diagonal are exact zeros.
struct QrFactors {
    DenseMatrix q;
    DenseMatrix r;
};

/// Householder thin QR of a; requires a.rows >= a.cols (callers own the
/// orientation, wide inputs are rejected rather than silently transposed).
QrFactors householder_qr(const DenseMatrix& a);

}  // namespace randsvd
