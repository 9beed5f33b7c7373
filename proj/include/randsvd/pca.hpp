#pragma once

#include <utility>
#include <vector>

#include "randsvd/matrix.hpp"
#include "randsvd/rsvd.hpp"

namespace randsvd::pca {

/// Principal components of a samples-as-rows data matrix.
struct PcaModel {
    std::vector<double> mean;               ///< per-feature column means, length d
    DenseMatrix components;                 ///< d x k, orthonormal columns
    std::vector<double> explained_variance; ///< sigma_i^2 / (N - 1), non-increasing
};

/// Subtract the per-column mean; returns the centered matrix and the mean.
/// Requires at least two rows.
std::pair<DenseMatrix, std::vector<double>> center_columns(const DenseMatrix& x);

/// PCA via randomized k-SVD of the centered data: components are the right
/// singular vectors, explained variances the squared singular values over
/// N - 1.
PcaModel fit_pca(const DenseMatrix& x, std::size_t k, const RsvdConfig& cfg);

/// Project rows of x onto the principal directions: (x - mean) * components.
DenseMatrix transform(const PcaModel& model, const DenseMatrix& x);

}  // namespace randsvd::pca
