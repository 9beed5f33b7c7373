#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace randsvd {

/// Row-major dense matrix of 64-bit floats. The universal carrier for
/// inputs, sketches, factors and intermediates. Always non-empty:
/// rows >= 1 and cols >= 1.
class DenseMatrix {
public:
    /// rows x cols matrix of zeros.
    DenseMatrix(std::size_t rows, std::size_t cols);

    /// Adopts row-major data; data.size() must equal rows*cols.
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    double operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }
    double& operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }

    const double* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }
    double* row_ptr(std::size_t i) { return data_.data() + i * cols_; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    DenseMatrix transposed() const;

    /// Keep the first `count` columns.
    DenseMatrix left_cols(std::size_t count) const;

    bool all_finite() const noexcept;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

/// Sum with pairwise (binary-tree) association; error grows like
/// O(log n * eps) instead of O(n * eps).
double pairwise_sum(std::span<const double> x);

/// Dot product with pairwise accumulation.
double pairwise_dot(std::span<const double> x, std::span<const double> y);

/// sqrt of the pairwise-accumulated sum of squared entries.
double frobenius_norm(const DenseMatrix& a);

/// Largest |a_ij|.
double max_abs(const DenseMatrix& a);

/// Largest |a_ij - b_ij|; shapes must match.
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace randsvd
