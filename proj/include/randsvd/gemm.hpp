#pragma once

#include "randsvd/matrix.hpp"

namespace randsvd {

/// Tile edge used by the blocked GEMM kernel.
inline constexpr std::size_t kGemmBlock = 64;

/// General matrix multiply: alpha * op(a) * op(b) + beta * c, where
/// op(x) is x or its transpose. Cache-blocked over kGemmBlock tiles;
/// c is untouched (the result is returned). With beta == 0 the values
/// of c are ignored entirely.
DenseMatrix gemm(double alpha, const DenseMatrix& a, bool transpose_a,
                 const DenseMatrix& b, bool transpose_b, double beta,
                 const DenseMatrix& c);

/// alpha * op(a) * op(b); no addend.
DenseMatrix gemm(double alpha, const DenseMatrix& a, bool transpose_a,
                 const DenseMatrix& b, bool transpose_b);

/// Plain product a * b.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace randsvd
