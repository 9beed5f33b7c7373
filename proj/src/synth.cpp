#include "randsvd/synth.hpp"

#include <cmath>
#include <string>

#include "randsvd/errors.hpp"
#include "randsvd/gemm.hpp"
#include "randsvd/qr.hpp"

namespace randsvd::synth {

SpectrumKind SpectrumKind::sharp(double beta) {
    if (!(beta > 0.0))
        throw ArgumentError("sharp decay requires beta > 0, got " +
                            std::to_string(beta));
    return SpectrumKind(Tag::sharp, beta);
}

const char* SpectrumKind::name() const noexcept {
    switch (tag_) {
        case Tag::fast: return "fast";
        case Tag::sharp: return "sharp";
        case Tag::slow: return "slow";
    }
    return "?";
}

double spectrum_value(const SpectrumKind& kind, std::size_t i) {
    if (i < 1) throw ArgumentError("spectrum index is 1-based");
    const double x = static_cast<double>(i);
    switch (kind.tag()) {
        case SpectrumKind::Tag::fast:
            return 1.0 / (x * x);
        case SpectrumKind::Tag::sharp:
            return 0.0001 + 1.0 / (1.0 + std::exp(x + 1.0 - kind.beta()));
        case SpectrumKind::Tag::slow:
            return 1.0 / std::pow(x, 0.1);
    }
    return 0.0;
}

namespace {

// Thin Haar slice: Q of the QR of an m x n Gaussian draw. householder_qr
// already fixes diag(R) >= 0, which is exactly the sign correction that
// makes the distribution Haar.
DenseMatrix haar_slice(std::size_t m, std::size_t n, GaussianSampler& sampler) {
    return householder_qr(gaussian_matrix(sampler, m, n)).q;
}

}  // namespace

DenseMatrix random_orthogonal(std::size_t dim, GaussianSampler& sampler) {
    if (dim < 1) throw ArgumentError("random_orthogonal needs dim >= 1");
    return haar_slice(dim, dim, sampler);
}

DenseMatrix synth_matrix(const SynthSpec& spec) {
    if (spec.rows < spec.cols || spec.cols < 1)
        throw ArgumentError("synth_matrix needs rows >= cols >= 1, got " +
                            std::to_string(spec.rows) + "x" +
                            std::to_string(spec.cols));
    GaussianSampler sampler(spec.seed);
    DenseMatrix u = haar_slice(spec.rows, spec.cols, sampler);
    const DenseMatrix v = random_orthogonal(spec.cols, sampler);
    for (std::size_t j = 0; j < spec.cols; ++j) {
        const double s = spectrum_value(spec.kind, j + 1);
        for (std::size_t i = 0; i < spec.rows; ++i) u(i, j) *= s;
    }
    return gemm(1.0, u, false, v, true);
}

}  // namespace randsvd::synth
