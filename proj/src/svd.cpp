#include "randsvd/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#ifdef RANDSVD_JACOBI_TRACE
#include <cstdio>
#endif

#include "randsvd/errors.hpp"

namespace randsvd {

/* One-sided Jacobi SVD (Hestenes 1958): plane rotations applied on the
   right make the working columns mutually orthogonal; their norms are the
   singular values, the normalized columns the left vectors, and the
   accumulated rotations the right vectors.

   Per sweep the columns are re-sorted by descending norm (de Rijk 1989),
   then every unordered pair is visited in a block-cyclic order so the two
   active column blocks stay cache-resident. A pair is rotated while its
   Gram term is above EITHER
     |w_i . w_j|  >  1e-14 * ||A||_F^2              (absolute)
     |w_i . w_j|  >  1e-13 * ||w_i|| * ||w_j||      (relative)
   The relative test is what keeps the left vectors orthonormal on strongly
   graded spectra (cf. LAPACK dgesvj); the absolute one bounds the leftover
   off-diagonal mass of the implicit Gram matrix. */

namespace {

constexpr double kAbsGramTol = 1e-14;   // times ||A||_F^2
constexpr double kRelGramTol = 1e-13;   // times sigma_i * sigma_j
constexpr std::size_t kPairBlock = 32;  // columns per Jacobi block

double dot_cols(const double* x, const double* y, std::size_t m) {
    return pairwise_dot(std::span<const double>(x, m), std::span<const double>(y, m));
}

// Gather cols of src (col-major, m x n) in the order given by perm.
void permute_cols(std::vector<double>& src, std::vector<double>& scratch,
                  std::size_t m, const std::vector<std::size_t>& perm) {
    scratch.resize(src.size());
    for (std::size_t j = 0; j < perm.size(); ++j)
        std::copy_n(src.data() + perm[j] * m, m, scratch.data() + j * m);
    src.swap(scratch);
}

struct PairSweep {
    std::vector<double>& w;       // m x n working columns
    std::vector<double>& v;       // n x n accumulated rotations
    std::vector<double>& colsq;   // running squared column norms
    std::size_t m, n;
    double abs_thresh;
    std::size_t rotations = 0;

    void visit(std::size_t i, std::size_t j) {
        double* wi = w.data() + i * m;
        double* wj = w.data() + j * m;
        const double d = dot_cols(wi, wj, m);
        const double ad = std::abs(d);
        if (ad <= abs_thresh && d * d <= kRelGramTol * kRelGramTol * colsq[i] * colsq[j])
            return;

        const double zeta = (colsq[j] - colsq[i]) / (2.0 * d);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        for (std::size_t r = 0; r < m; ++r) {
            const double a = wi[r], b = wj[r];
            wi[r] = c * a - s * b;
            wj[r] = s * a + c * b;
        }
        double* vi = v.data() + i * n;
        double* vj = v.data() + j * n;
        for (std::size_t r = 0; r < n; ++r) {
            const double a = vi[r], b = vj[r];
            vi[r] = c * a - s * b;
            vj[r] = s * a + c * b;
        }
        colsq[i] -= t * d;
        colsq[j] += t * d;
        ++rotations;
    }

    // every unordered pair exactly once, block-cyclic
    void run() {
        rotations = 0;
        for (std::size_t bi = 0; bi < n; bi += kPairBlock) {
            const std::size_t bi_end = std::min(n, bi + kPairBlock);
            for (std::size_t i = bi; i < bi_end; ++i)
                for (std::size_t j = i + 1; j < bi_end; ++j) visit(i, j);
            for (std::size_t bj = bi_end; bj < n; bj += kPairBlock) {
                const std::size_t bj_end = std::min(n, bj + kPairBlock);
                for (std::size_t i = bi; i < bi_end; ++i)
                    for (std::size_t j = bj; j < bj_end; ++j) visit(i, j);
            }
        }
    }
};

// Orthogonalize canonical basis vectors against the columns of u
// (col-major, m x width, only `valid` prefix-by-index list filled) and
// write them into the null slots. Deterministic: candidates are tried in
// order of how weakly their coordinate is already represented.
void fill_null_columns(std::vector<double>& u, std::size_t m,
                       std::vector<std::size_t>& valid,
                       const std::vector<std::size_t>& nulls) {
    for (std::size_t slot : nulls) {
        std::vector<double> row_load(m, 0.0);
        for (std::size_t c : valid) {
            const double* col = u.data() + c * m;
            for (std::size_t r = 0; r < m; ++r) row_load[r] += col[r] * col[r];
        }
        std::vector<std::size_t> order(m);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return row_load[a] < row_load[b];
                         });
        std::vector<double> cand(m);
        bool placed = false;
        for (std::size_t t : order) {
            std::fill(cand.begin(), cand.end(), 0.0);
            cand[t] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t c : valid) {
                    const double* col = u.data() + c * m;
                    const double d = dot_cols(cand.data(), col, m);
                    for (std::size_t r = 0; r < m; ++r) cand[r] -= d * col[r];
                }
            }
            const double nrm = std::sqrt(dot_cols(cand.data(), cand.data(), m));
            if (nrm >= 1e-4) {
                double* dst = u.data() + slot * m;
                for (std::size_t r = 0; r < m; ++r) dst[r] = cand[r] / nrm;
                valid.push_back(slot);
                placed = true;
                break;
            }
        }
        if (!placed)
            throw ConvergenceError("dense_svd could not complete an orthonormal basis",
                                   0);
    }
}

SvdFactors jacobi_svd_tall(const DenseMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();

    std::vector<double> w(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) w[j * m + i] = a(i, j);
    std::vector<double> v(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) v[j * n + j] = 1.0;

    std::vector<double> colsq(n);
    auto recompute_colsq = [&] {
        for (std::size_t j = 0; j < n; ++j)
            colsq[j] = dot_cols(w.data() + j * m, w.data() + j * m, m);
    };
    recompute_colsq();
    const double total = pairwise_sum(colsq);
    const double abs_thresh = kAbsGramTol * total;

    PairSweep sweep{w, v, colsq, m, n, abs_thresh};
    std::vector<double> scratch;
    std::vector<std::size_t> perm(n);
    bool converged = false;
    int sweeps = 0;
    while (sweeps < kSvdMaxSweeps) {
        ++sweeps;
        recompute_colsq();
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
            return colsq[x] > colsq[y];
        });
        permute_cols(w, scratch, m, perm);
        permute_cols(v, scratch, n, perm);
        {
            std::vector<double> reordered(n);
            for (std::size_t j = 0; j < n; ++j) reordered[j] = colsq[perm[j]];
            colsq.swap(reordered);
        }
        sweep.run();
#ifdef RANDSVD_JACOBI_TRACE
        std::fprintf(stderr, "jacobi sweep %d: %zu rotations\n", sweeps,
                     sweep.rotations);
#endif
        if (sweep.rotations == 0) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw ConvergenceError("one-sided Jacobi SVD did not converge within " +
                                   std::to_string(kSvdMaxSweeps) + " sweeps",
                               sweeps);

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j)
        sigma[j] = std::sqrt(dot_cols(w.data() + j * m, w.data() + j * m, m));

    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });
    permute_cols(w, scratch, m, perm);
    permute_cols(v, scratch, n, perm);
    {
        std::vector<double> reordered(n);
        for (std::size_t j = 0; j < n; ++j) reordered[j] = sigma[perm[j]];
        sigma.swap(reordered);
    }

    const double sigma_max = sigma.empty() ? 0.0 : sigma[0];
    const double null_thresh = sigma_max * static_cast<double>(std::max(m, n)) *
                               std::numeric_limits<double>::epsilon();
    std::vector<std::size_t> valid;
    std::vector<std::size_t> nulls;
    for (std::size_t j = 0; j < n; ++j) {
        if (sigma[j] > null_thresh) {
            double* col = w.data() + j * m;
            for (std::size_t r = 0; r < m; ++r) col[r] /= sigma[j];
            valid.push_back(j);
        } else {
            nulls.push_back(j);
        }
    }
    fill_null_columns(w, m, valid, nulls);

    // sign convention: the largest-magnitude entry of each left vector is
    // positive (first such entry wins ties); the paired right vector flips too
    for (std::size_t j = 0; j < n; ++j) {
        double* uc = w.data() + j * m;
        std::size_t arg = 0;
        double best = std::abs(uc[0]);
        for (std::size_t r = 1; r < m; ++r) {
            if (std::abs(uc[r]) > best) {
                best = std::abs(uc[r]);
                arg = r;
            }
        }
        if (uc[arg] < 0.0) {
            for (std::size_t r = 0; r < m; ++r) uc[r] = -uc[r];
            double* vc = v.data() + j * n;
            for (std::size_t r = 0; r < n; ++r) vc[r] = -vc[r];
        }
    }

    DenseMatrix um(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) um(i, j) = w[j * m + i];
    DenseMatrix vm(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) vm(i, j) = v[j * n + i];
    return {std::move(um), std::move(sigma), std::move(vm)};
}

}  // namespace

SvdFactors dense_svd(const DenseMatrix& a) {
    if (!a.all_finite())
        throw ArgumentError("dense_svd input contains NaN or Inf");
    if (a.rows() >= a.cols()) return jacobi_svd_tall(a);
    SvdFactors f = jacobi_svd_tall(a.transposed());
    return {std::move(f.v), std::move(f.sigma), std::move(f.u)};
}

DenseMatrix extend_orthonormal(const DenseMatrix& u, std::size_t target_cols) {
    const std::size_t m = u.rows();
    const std::size_t r0 = u.cols();
    if (target_cols < r0 || target_cols > m)
        throw DimensionError("extend_orthonormal from " + std::to_string(r0) +
                             " to " + std::to_string(target_cols) +
                             " columns of height " + std::to_string(m));
    if (target_cols == r0) return u;

    std::vector<double> cols(m * target_cols, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < r0; ++j) cols[j * m + i] = u(i, j);
    std::vector<std::size_t> valid(r0);
    std::iota(valid.begin(), valid.end(), std::size_t{0});
    std::vector<std::size_t> nulls(target_cols - r0);
    std::iota(nulls.begin(), nulls.end(), r0);
    fill_null_columns(cols, m, valid, nulls);

    DenseMatrix out(m, target_cols);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < target_cols; ++j) out(i, j) = cols[j * m + i];
    return out;
}

}  // namespace randsvd
