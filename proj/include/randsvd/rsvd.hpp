#pragma once

#include <cstdint>
#include <vector>

#include "randsvd/matrix.hpp"
#include "randsvd/rng.hpp"
#include "randsvd/svd.hpp"

namespace randsvd {

/// Configuration of the randomized k-SVD solver.
struct RsvdConfig {
    std::size_t k = 1;           ///< target rank, >= 1
    std::size_t oversample = 10; ///< extra sketch columns p
    std::size_t power_q = 2;     ///< power (subspace) iteration rounds
    std::uint64_t seed = 0;
    double epsilon = 0.5;        ///< nominal accuracy parameter in (0, 1)
    bool epsilon_mode = false;   ///< derive the sketch width as ceil(k / epsilon)

    /// Effective sketch width for an m x n input.
    std::size_t sketch_width(std::size_t m, std::size_t n) const;
};

/// Output of the randomized solver: factors truncated (or zero-padded) to
/// exactly k triplets, plus the basis width actually used.
struct RsvdResult {
    SvdFactors factors;
    std::size_t sketch_width = 0;

    /// Frobenius norm of a - u * diag(sigma) * v^T, evaluated on demand.
    double residual_fro(const DenseMatrix& a) const;
};

/// Step 1: the sketch y0 = a * omega with omega an n x s Gaussian draw.
DenseMatrix sketch(const DenseMatrix& a, std::size_t s, GaussianSampler& sampler);

/// Step 2: q rounds of power (subspace) iteration on y0, re-orthonormalized
/// by thin QR after every application of a^T and of a, so the returned
/// columns span (a a^T)^q y0 without the floating-point collapse of the
/// literal product. q = 0 just orthonormalizes y0.
DenseMatrix power_iterate(const DenseMatrix& a, const DenseMatrix& y0,
                          std::size_t q);

/// Step 3: orthonormal basis of range(y) from thin QR. Columns whose
/// R-diagonal falls below 1e-13 * ||y||_F are dropped, so the result can be
/// narrower than y for rank-deficient input.
DenseMatrix range_basis(const DenseMatrix& y);

/// Steps 4-6: b = q^T a, small SVD of b, back-projection u = qbasis * u_b,
/// truncated to the top k triplets. Requires k <= qbasis.cols.
RsvdResult project_and_solve(const DenseMatrix& a, const DenseMatrix& qbasis,
                             std::size_t k);

/// Full pipeline: sketch -> power_iterate -> range_basis ->
/// project_and_solve. Wide inputs run on the transpose with U/V swapped
/// back. Deterministic per (a, cfg).
RsvdResult randomized_ksvd(const DenseMatrix& a, const RsvdConfig& cfg);

/// Same pipeline minus the final back-projection; the sigma vector is
/// bit-identical to randomized_ksvd's under the same config.
std::vector<double> singular_values_only(const DenseMatrix& a,
                                         const RsvdConfig& cfg);

}  // namespace randsvd
