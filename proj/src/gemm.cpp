#include "randsvd/gemm.hpp"

#include <algorithm>
#include <string>

#include "randsvd/errors.hpp"
#include "randsvd/parallel.hpp"

namespace randsvd {

namespace {

std::string op_shape(const DenseMatrix& m, bool transpose) {
    const std::size_t r = transpose ? m.cols() : m.rows();
    const std::size_t c = transpose ? m.rows() : m.cols();
    return std::to_string(r) + "x" + std::to_string(c) +
           (transpose ? " (transposed)" : "");
}

// C[mb x n] += alpha * A[mb x k] * B[k x n], all row-major, blocked over
// kGemmBlock x kGemmBlock tiles of A so a tile of A and the touched rows
// of B/C stay cache-resident. The j loop streams whole rows and is the
// vectorized axis.
void kernel_block_rows(double* cdat, const double* adat, const double* bdat,
                       std::size_t row_lo, std::size_t row_hi, std::size_t k,
                       std::size_t n, double alpha) {
    for (std::size_t i0 = row_lo; i0 < row_hi; i0 += kGemmBlock) {
        const std::size_t i1 = std::min(row_hi, i0 + kGemmBlock);
        for (std::size_t k0 = 0; k0 < k; k0 += kGemmBlock) {
            const std::size_t k1 = std::min(k, k0 + kGemmBlock);
            for (std::size_t i = i0; i < i1; ++i) {
                double* crow = cdat + i * n;
                const double* arow = adat + i * k;
                for (std::size_t kk = k0; kk < k1; ++kk) {
                    const double aik = alpha * arow[kk];
                    const double* brow = bdat + kk * n;
                    for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
                }
            }
        }
    }
}

}  // namespace

DenseMatrix gemm(double alpha, const DenseMatrix& a, bool transpose_a,
                 const DenseMatrix& b, bool transpose_b, double beta,
                 const DenseMatrix& c) {
    const std::size_t m = transpose_a ? a.cols() : a.rows();
    const std::size_t inner_a = transpose_a ? a.rows() : a.cols();
    const std::size_t inner_b = transpose_b ? b.cols() : b.rows();
    const std::size_t n = transpose_b ? b.rows() : b.cols();

    if (inner_a != inner_b)
        throw DimensionError("gemm inner dimensions disagree: op(a) is " +
                             op_shape(a, transpose_a) + ", op(b) is " +
                             op_shape(b, transpose_b));
    if (beta != 0.0 && (c.rows() != m || c.cols() != n))
        throw DimensionError("gemm addend c is " + op_shape(c, false) +
                             ", result is " + std::to_string(m) + "x" +
                             std::to_string(n));

    DenseMatrix out(m, n);
    if (beta != 0.0)
        for (std::size_t i = 0; i < out.size(); ++i)
            out.data()[i] = beta * c.data()[i];

    // Transposed operands are materialized once so the kernel always
    // walks unit-stride rows; the O(mn) copy is negligible against the
    // O(mnk) multiply.
    const DenseMatrix* ap = &a;
    const DenseMatrix* bp = &b;
    DenseMatrix at(1, 1);
    DenseMatrix bt(1, 1);
    if (transpose_a) {
        at = a.transposed();
        ap = &at;
    }
    if (transpose_b) {
        bt = b.transposed();
        bp = &bt;
    }

    double* cdat = out.data().data();
    const double* adat = ap->data().data();
    const double* bdat = bp->data().data();

    const std::size_t row_blocks = (m + kGemmBlock - 1) / kGemmBlock;
    parallel_for(row_blocks, [&](std::size_t blk_lo, std::size_t blk_hi) {
        kernel_block_rows(cdat, adat, bdat, blk_lo * kGemmBlock,
                          std::min(m, blk_hi * kGemmBlock), inner_a, n, alpha);
    });
    return out;
}

DenseMatrix gemm(double alpha, const DenseMatrix& a, bool transpose_a,
                 const DenseMatrix& b, bool transpose_b) {
    const DenseMatrix unused(1, 1);
    return gemm(alpha, a, transpose_a, b, transpose_b, 0.0, unused);
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    return gemm(1.0, a, false, b, false);
}

}  // namespace randsvd
