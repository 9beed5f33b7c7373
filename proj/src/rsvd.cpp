#include "randsvd/rsvd.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "randsvd/errors.hpp"
#include "randsvd/gemm.hpp"
#include "randsvd/qr.hpp"

namespace randsvd {

/* Randomized k-SVD with Gaussian sketching and stabilized subspace
   iteration, after Halko, Martinsson & Tropp, SIAM Review 53(2), 2011:
   sample the range with A*Omega, sharpen it with (A A^T)^q, project to the
   small B = Q^T A, factor B exactly, lift U back through Q. */

namespace {

constexpr double kRangeDropTol = 1e-13;  // times ||y||_F, on diag(R)

std::size_t min_dim(const DenseMatrix& a) { return std::min(a.rows(), a.cols()); }

}  // namespace

std::size_t RsvdConfig::sketch_width(std::size_t m, std::size_t n) const {
    const std::size_t cap = std::min(m, n);
    if (epsilon_mode) {
        const double raw = std::ceil(static_cast<double>(k) / epsilon);
        return std::min<std::size_t>(static_cast<std::size_t>(raw), cap);
    }
    return std::min(k + oversample, cap);
}

double RsvdResult::residual_fro(const DenseMatrix& a) const {
    const std::size_t k = factors.sigma.size();
    if (factors.u.rows() != a.rows() || factors.v.rows() != a.cols())
        throw DimensionError("residual_fro: factors for " +
                             std::to_string(factors.u.rows()) + "x" +
                             std::to_string(factors.v.rows()) +
                             " against input " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()));
    DenseMatrix us(factors.u.rows(), k);
    for (std::size_t i = 0; i < us.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j) us(i, j) = factors.u(i, j) * factors.sigma[j];
    return frobenius_norm(gemm(-1.0, us, false, factors.v, true, 1.0, a));
}

DenseMatrix sketch(const DenseMatrix& a, std::size_t s, GaussianSampler& sampler) {
    if (s < 1 || s > min_dim(a))
        throw ArgumentError("sketch width " + std::to_string(s) +
                            " outside [1, " + std::to_string(min_dim(a)) +
                            "] for a " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " input");
    const DenseMatrix omega = gaussian_matrix(sampler, a.cols(), s);
    return matmul(a, omega);
}

DenseMatrix power_iterate(const DenseMatrix& a, const DenseMatrix& y0,
                          std::size_t q) {
    if (y0.rows() != a.rows())
        throw DimensionError("power_iterate: y0 has " + std::to_string(y0.rows()) +
                             " rows, a has " + std::to_string(a.rows()));
    if (q == 0) return householder_qr(y0).q;
    DenseMatrix w = y0;
    for (std::size_t round = 0; round < q; ++round) {
        w = householder_qr(gemm(1.0, a, true, w, false)).q;
        w = householder_qr(matmul(a, w)).q;
    }
    return w;
}

DenseMatrix range_basis(const DenseMatrix& y) {
    const QrFactors f = householder_qr(y);
    const double drop = kRangeDropTol * frobenius_norm(y);
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < f.r.cols(); ++j)
        if (std::abs(f.r(j, j)) > drop) keep.push_back(j);
    if (keep.size() == f.r.cols()) return f.q;
    if (keep.empty()) keep.push_back(0);  // numerically zero input: 1-dim basis
    DenseMatrix q(y.rows(), keep.size());
    for (std::size_t i = 0; i < y.rows(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j) q(i, j) = f.q(i, keep[j]);
    return q;
}

RsvdResult project_and_solve(const DenseMatrix& a, const DenseMatrix& qbasis,
                             std::size_t k) {
    if (qbasis.rows() != a.rows())
        throw DimensionError("project_and_solve: basis has " +
                             std::to_string(qbasis.rows()) + " rows, a has " +
                             std::to_string(a.rows()));
    if (k < 1 || k > qbasis.cols())
        throw ArgumentError("rank k=" + std::to_string(k) +
                            " exceeds the basis width " +
                            std::to_string(qbasis.cols()));

    const DenseMatrix b = gemm(1.0, qbasis, true, a, false);
    SvdFactors f = dense_svd(b);
    const std::size_t avail = std::min<std::size_t>(k, f.sigma.size());

    f.sigma.resize(avail);
    RsvdResult out{SvdFactors{matmul(qbasis, f.u.left_cols(avail)),
                              std::move(f.sigma), f.v.left_cols(avail)},
                   qbasis.cols()};
    return out;
}

namespace {

// Pads a solved result up to k triplets when the range basis came out
// narrower than k (exactly rank-deficient input): the missing singular
// values are true zeros, and the factor matrices get deterministic
// orthonormal completion columns.
RsvdResult pad_to_rank(RsvdResult res, std::size_t k) {
    const std::size_t have = res.factors.sigma.size();
    if (have >= k) return res;
    res.factors.sigma.resize(k, 0.0);
    res.factors.u = extend_orthonormal(res.factors.u, k);
    res.factors.v = extend_orthonormal(res.factors.v, k);
    return res;
}

RsvdResult solve_tall(const DenseMatrix& a, const RsvdConfig& cfg) {
    const std::size_t s = cfg.sketch_width(a.rows(), a.cols());
    GaussianSampler sampler(cfg.seed);
    const DenseMatrix y0 = sketch(a, s, sampler);
    const DenseMatrix w = power_iterate(a, y0, cfg.power_q);
    const DenseMatrix q = range_basis(w);
    const std::size_t k_eff = std::min(cfg.k, q.cols());
    return pad_to_rank(project_and_solve(a, q, k_eff), cfg.k);
}

void validate(const DenseMatrix& a, const RsvdConfig& cfg) {
    if (cfg.k < 1 || cfg.k > min_dim(a))
        throw ArgumentError("target rank k=" + std::to_string(cfg.k) +
                            " outside [1, " + std::to_string(min_dim(a)) +
                            "] for a " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " input");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
        throw ArgumentError("epsilon must lie in (0, 1)");
    if (!a.all_finite())
        throw ArgumentError("randomized_ksvd input contains NaN or Inf");
}

}  // namespace

RsvdResult randomized_ksvd(const DenseMatrix& a, const RsvdConfig& cfg) {
    validate(a, cfg);
    if (a.rows() >= a.cols()) return solve_tall(a, cfg);
    RsvdResult res = solve_tall(a.transposed(), cfg);
    std::swap(res.factors.u, res.factors.v);
    return res;
}

std::vector<double> singular_values_only(const DenseMatrix& a,
                                         const RsvdConfig& cfg) {
    validate(a, cfg);
    std::optional<DenseMatrix> transposed;
    if (a.rows() < a.cols()) transposed = a.transposed();
    const DenseMatrix& tall = transposed ? *transposed : a;
    const std::size_t s = cfg.sketch_width(tall.rows(), tall.cols());
    GaussianSampler sampler(cfg.seed);
    const DenseMatrix y0 = sketch(tall, s, sampler);
    const DenseMatrix w = power_iterate(tall, y0, cfg.power_q);
    const DenseMatrix q = range_basis(w);
    const DenseMatrix b = gemm(1.0, q, true, tall, false);
    std::vector<double> sigma = dense_svd(b).sigma;
    sigma.resize(std::min(cfg.k, sigma.size()));
    sigma.resize(cfg.k, 0.0);
    return sigma;
}

}  // namespace randsvd
