#include "randsvd/matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "randsvd/errors.hpp"

namespace randsvd {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
    return std::to_string(r) + "x" + std::to_string(c);
}

constexpr std::size_t kPairwiseBase = 64;

double pairwise_sum_impl(const double* x, std::size_t n) {
    if (n <= kPairwiseBase) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += x[i];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_impl(x, half) + pairwise_sum_impl(x + half, n - half);
}

double pairwise_dot_impl(const double* x, const double* y, std::size_t n) {
    if (n <= kPairwiseBase) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_dot_impl(x, y, half) +
           pairwise_dot_impl(x + half, y + half, n - half);
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0)
        throw DimensionError("DenseMatrix requires rows >= 1 and cols >= 1, got " +
                             shape_str(rows, cols));
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0)
        throw DimensionError("DenseMatrix requires rows >= 1 and cols >= 1, got " +
                             shape_str(rows, cols));
    if (data_.size() != rows * cols)
        throw DimensionError("DenseMatrix " + shape_str(rows, cols) + " needs " +
                             std::to_string(rows * cols) + " values, got " +
                             std::to_string(data_.size()));
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

DenseMatrix DenseMatrix::left_cols(std::size_t count) const {
    if (count == 0 || count > cols_)
        throw DimensionError("left_cols(" + std::to_string(count) + ") on a " +
                             shape_str(rows_, cols_) + " matrix");
    DenseMatrix out(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, j);
    return out;
}

bool DenseMatrix::all_finite() const noexcept {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

double pairwise_sum(std::span<const double> x) {
    return pairwise_sum_impl(x.data(), x.size());
}

double pairwise_dot(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw DimensionError("dot of length " + std::to_string(x.size()) +
                             " against length " + std::to_string(y.size()));
    return pairwise_dot_impl(x.data(), y.data(), x.size());
}

double frobenius_norm(const DenseMatrix& a) {
    return std::sqrt(pairwise_dot_impl(a.data().data(), a.data().data(), a.size()));
}

double max_abs(const DenseMatrix& a) {
    double best = 0.0;
    for (double v : a.data()) best = std::max(best, std::abs(v));
    return best;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("max_abs_diff between " + shape_str(a.rows(), a.cols()) +
                             " and " + shape_str(b.rows(), b.cols()));
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        best = std::max(best, std::abs(a.data()[i] - b.data()[i]));
    return best;
}

}  // namespace randsvd
