#include "randsvd/rng.hpp"

#include <cmath>

namespace randsvd {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

}  // namespace

std::uint64_t GaussianSampler::next_u64() {
    ++counter_;
    return mix64(seed_ + counter_ * kGolden);
}

double GaussianSampler::uniform01() {
    // top 53 bits, shifted into (0, 1] so log() below is always finite
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double GaussianSampler::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    cached_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

DenseMatrix gaussian_matrix(GaussianSampler& sampler, std::size_t rows,
                            std::size_t cols) {
    DenseMatrix m(rows, cols);
    for (double& v : m.data()) v = sampler.normal();
    return m;
}

}  // namespace randsvd
