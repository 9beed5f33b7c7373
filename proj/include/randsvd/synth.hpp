#pragma once

#include <cstdint>

#include "randsvd/matrix.hpp"
#include "randsvd/rng.hpp"

namespace randsvd::synth {

/// One of the three prescribed singular-value decay laws, 1-based in i:
///   fast   sigma_i = 1 / i^2
///   sharp  sigma_i = 0.0001 + 1 / (1 + exp(i + 1 - beta))
///   slow   sigma_i = 1 / i^0.1
class SpectrumKind {
public:
    enum class Tag { fast, sharp, slow };

    static SpectrumKind fast() { return SpectrumKind(Tag::fast, 0.0); }
    static SpectrumKind sharp(double beta);
    static SpectrumKind slow() { return SpectrumKind(Tag::slow, 0.0); }

    Tag tag() const noexcept { return tag_; }
    /// Breakout point; only meaningful for sharp decay.
    double beta() const noexcept { return beta_; }

    const char* name() const noexcept;

private:
    SpectrumKind(Tag tag, double beta) : tag_(tag), beta_(beta) {}
    Tag tag_;
    double beta_;
};

/// Test-matrix recipe: an m x n product U * Sigma * V^T with Haar-random
/// orthogonal factors and the chosen diagonal decay; requires m >= n >= 1.
struct SynthSpec {
    std::size_t rows = 1;
    std::size_t cols = 1;
    SpectrumKind kind = SpectrumKind::fast();
    std::uint64_t seed = 0;
};

/// The decay law evaluated at 1-based index i.
double spectrum_value(const SpectrumKind& kind, std::size_t i);

/// Haar-distributed dim x dim orthogonal matrix: QR of a Gaussian draw with
/// the R-diagonal sign correction (Mezzadri, Notices AMS 54, 2007).
DenseMatrix random_orthogonal(std::size_t dim, GaussianSampler& sampler);

/// Builds U * Sigma * V^T per the spec. The left factor is realized as a
/// thin m x n Haar slice (QR of an m x n Gaussian draw), so generation is
/// O(m n^2) and never materializes an m x m matrix.
DenseMatrix synth_matrix(const SynthSpec& spec);

}  // namespace randsvd::synth
