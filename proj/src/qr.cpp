#include "randsvd/qr.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "randsvd/errors.hpp"
#include "randsvd/parallel.hpp"

namespace randsvd {

/* Householder QR, Trefethen & Bau, Numerical Linear Algebra, Alg. 10.1:
   column k is reduced by the reflector H = I - 2 v v^T with
   v ~ x + sign(x_1) ||x|| e_1, then H is applied to the trailing columns.
   The thin Q is accumulated afterwards by running the reflectors backwards
   over the first n columns of the identity (Alg. 10.3). Work happens in
   column-major scratch so reflector dots and updates are unit-stride. */

namespace {

double dot_span(const double* x, const double* y, std::size_t n) {
    return pairwise_dot(std::span<const double>(x, n), std::span<const double>(y, n));
}

}  // namespace

QrFactors householder_qr(const DenseMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (m < n)
        throw DimensionError("householder_qr needs rows >= cols, got " +
                             std::to_string(m) + "x" + std::to_string(n) +
                             "; transpose the input first");

    // column-major copy of a
    std::vector<double> w(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) w[j * m + i] = a(i, j);

    // reflector vectors, column k holds v_k in rows k..m-1 (unit norm)
    std::vector<double> refl(m * n, 0.0);
    std::vector<bool> active(n, false);

    for (std::size_t k = 0; k < n; ++k) {
        double* col = w.data() + k * m;
        const std::size_t len = m - k;
        const double norm_x = std::sqrt(dot_span(col + k, col + k, len));
        if (norm_x == 0.0) continue;  // zero column: H_k = I, r_kk = 0

        double* v = refl.data() + k * m + k;
        for (std::size_t i = 0; i < len; ++i) v[i] = col[k + i];
        const double sign = col[k] >= 0.0 ? 1.0 : -1.0;
        v[0] += sign * norm_x;
        const double norm_v = std::sqrt(dot_span(v, v, len));
        for (std::size_t i = 0; i < len; ++i) v[i] /= norm_v;
        active[k] = true;

        col[k] = -sign * norm_x;  // the new r_kk; entries below become zero

        parallel_for(n - k - 1, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t t = lo; t < hi; ++t) {
                double* cj = w.data() + (k + 1 + t) * m + k;
                const double d = 2.0 * dot_span(v, cj, len);
                for (std::size_t i = 0; i < len; ++i) cj[i] -= d * v[i];
            }
        });
    }

    // backward accumulation of the thin Q; at step k only columns >= k
    // differ from the identity, so the update is triangular
    std::vector<double> q(m * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) q[j * m + j] = 1.0;
    for (std::size_t kk = n; kk-- > 0;) {
        if (!active[kk]) continue;
        const double* v = refl.data() + kk * m + kk;
        const std::size_t len = m - kk;
        parallel_for(n - kk, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t t = lo; t < hi; ++t) {
                double* cj = q.data() + (kk + t) * m + kk;
                const double d = 2.0 * dot_span(v, cj, len);
                for (std::size_t i = 0; i < len; ++i) cj[i] -= d * v[i];
            }
        });
    }

    // fix signs so diag(r) >= 0, flipping the paired q column with each row
    for (std::size_t k = 0; k < n; ++k) {
        if (w[k * m + k] < 0.0) {
            for (std::size_t j = k; j < n; ++j) w[j * m + k] = -w[j * m + k];
            double* qc = q.data() + k * m;
            for (std::size_t i = 0; i < m; ++i) qc[i] = -qc[i];
        }
    }

    DenseMatrix qm(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) qm(i, j) = q[j * m + i];
    DenseMatrix rm(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) rm(i, j) = w[j * m + i];
    return {std::move(qm), std::move(rm)};
}

}  // namespace randsvd
