#include "randsvd/pca.hpp"

#include <string>

#include "randsvd/errors.hpp"
#include "randsvd/gemm.hpp"

namespace randsvd::pca {

std::pair<DenseMatrix, std::vector<double>> center_columns(const DenseMatrix& x) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    if (n < 2)
        throw ArgumentError("center_columns needs at least 2 rows, got " +
                            std::to_string(n));
    std::vector<double> mean(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = x.row_ptr(i);
        for (std::size_t j = 0; j < d; ++j) mean[j] += row[j];
    }
    for (double& m : mean) m /= static_cast<double>(n);
    DenseMatrix centered(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) centered(i, j) = x(i, j) - mean[j];
    return {std::move(centered), std::move(mean)};
}

PcaModel fit_pca(const DenseMatrix& x, std::size_t k, const RsvdConfig& cfg) {
    if (k < 1 || k > std::min(x.rows(), x.cols()))
        throw ArgumentError("fit_pca k=" + std::to_string(k) + " outside [1, " +
                            std::to_string(std::min(x.rows(), x.cols())) + "]");
    auto [centered, mean] = center_columns(x);
    RsvdConfig solve_cfg = cfg;
    solve_cfg.k = k;
    const RsvdResult res = randomized_ksvd(centered, solve_cfg);
    std::vector<double> variance(k);
    const double denom = static_cast<double>(x.rows() - 1);
    for (std::size_t i = 0; i < k; ++i)
        variance[i] = res.factors.sigma[i] * res.factors.sigma[i] / denom;
    return {std::move(mean), res.factors.v, std::move(variance)};
}

DenseMatrix transform(const PcaModel& model, const DenseMatrix& x) {
    const std::size_t d = model.components.rows();
    if (x.cols() != d)
        throw DimensionError("transform: data has " + std::to_string(x.cols()) +
                             " features, model has " + std::to_string(d));
    DenseMatrix shifted(x.rows(), d);
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < d; ++j) shifted(i, j) = x(i, j) - model.mean[j];
    return matmul(shifted, model.components);
}

}  // namespace randsvd::pca
