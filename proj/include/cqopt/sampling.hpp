#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cqopt/linalg.hpp"

namespace cqopt {

/// SplitMix64 finalizer; used to derive independent seeds.
std::uint64_t mixSeed(std::uint64_t seed, std::uint64_t stream);

/// Deterministic random stream identified by (seed, stream).
///
/// The engine is std::mt19937_64 (bit-exact across standard libraries),
/// seeded with mixSeed(seed, stream). Uniforms take the top 53 bits; normal
/// variates use the Box-Muller transform, consuming two uniforms per pair
/// and returning the cosine branch first.
class RandomSource {
public:
    RandomSource(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream() const noexcept { return stream_; }

    /// Uniform on [0, 1).
    double uniform();
    /// Standard normal.
    double normal();
    /// -1 or +1 with equal probability.
    int sign();

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool hasSpare_ = false;
};

/// Quaternion normal QN(0, 4 I_n): all 4n real components i.i.d. N(0, 1).
/// Components are drawn component-major (all w, then x, y, z).
CQVector sampleQNormal(std::size_t n, RandomSource& src);

/// Uniform on the quaternion unit sphere S^n (eta / |eta|).
CQVector sampleSphere(std::size_t n, RandomSource& src);

/// d i.i.d. symmetric Bernoulli signs.
std::vector<int> sampleSigns(std::size_t d, RandomSource& src);

}  // namespace cqopt
