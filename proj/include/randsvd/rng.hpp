#pragma once

#include <cstdint>

#include "randsvd/matrix.hpp"

namespace randsvd {

/// Deterministic Gaussian stream: a counter-based SplitMix64 generator
/// (Steele, Lea & Flood, OOPSLA 2014) feeding the Box-Muller transform.
///
/// The raw 64-bit stream is a pure function of (seed, counter):
///   word(c) = mix64(seed + c * 0x9E3779B97F4A7C15)
/// with the SplitMix64 finalizer
///   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
///   z ^= z >> 27; z *= 0x94D049BB133111EB;
///   z ^= z >> 31;
/// so any implementation of these formulas reproduces the stream exactly.
/// Uniforms map the top 53 bits into (0, 1]; normals come in Box-Muller
/// pairs (the sine half is cached for the next call).
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t counter() const noexcept { return counter_; }

    /// Next raw word of the counter-based stream.
    std::uint64_t next_u64();

    /// Uniform double in (0, 1].
    double uniform01();

    /// Standard normal draw.
    double normal();

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// rows x cols matrix of independent standard-normal draws, filled in
/// row-major order from the sampler.
DenseMatrix gaussian_matrix(GaussianSampler& sampler, std::size_t rows,
                            std::size_t cols);

}  // namespace randsvd
