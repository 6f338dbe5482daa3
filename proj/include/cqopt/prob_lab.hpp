#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "cqopt/linalg.hpp"

namespace cqopt {

/// Monte Carlo estimate of Prob{Re(a^T xi) >= threshold |a|} for xi uniform
/// on the quaternion unit sphere, with the two bound curves (constant 1).
struct ProbeResult {
    std::size_t n = 0;
    double gamma = 0.0;
    std::optional<double> delta;
    std::size_t samples = 0;
    std::size_t hits = 0;
    double empiricalProb = 0.0;
    /// sqrt(gamma ln n / n)
    double threshold = 0.0;
    /// n^(-4.5 gamma) / sqrt(ln n)
    double bound45 = 0.0;
    /// n^(-(2 + delta + delta^2 / 2) gamma) / sqrt(ln n); NaN without delta.
    double boundImproved = 0.0;
    /// sqrt(p (1 - p) / samples)
    double standardError() const;
};

struct TailOptions {
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 42;
    std::optional<double> delta;
    /// Direction a; defaults to the first standard basis vector.
    std::optional<CQVector> direction;
    unsigned threads = 0;
};

/// Requires n >= 2, gamma > 0, gamma ln n < n, samples >= 1000. Samples are
/// drawn in fixed batches, batch b from RandomSource(seed, b), so the same
/// seed reuses the same draws for every gamma and direction.
ProbeResult estimateTailProb(std::size_t n, double gamma, const TailOptions& options);

/// Per-draw event indicators behind estimateTailProb (same draws, same order).
std::vector<std::uint8_t> tailEventMask(std::size_t n, double gamma, const TailOptions& options);

struct ChiSquareTail {
    double t = 0.0;
    std::size_t samples = 0;
    double empirical = 0.0;  ///< fraction with z >= 2|b| sqrt(t) + 2|b|_inf t
    double bound = 0.0;      ///< e^-t
    double slack = 0.0;      ///< 4 sqrt(e^-t / samples)
    bool passed = false;     ///< empirical <= bound + slack
};

/// Laurent-Massart upper tail for z = sum b_i (eta_i^2 - 1), eta_i i.i.d. N(0,1).
/// Requires t > 0 and b >= 0 (not all zero).
ChiSquareTail checkChiSquareTail(double t, std::span<const double> b, std::size_t samples, std::uint64_t seed,
                                 unsigned threads = 0);

struct BoundCurvePoint {
    std::size_t n = 0;
    double exponent45 = 0.0;        ///< 4.5 gamma
    double exponentImproved = 0.0;  ///< (2 + delta + delta^2 / 2) gamma
    double bound45 = 0.0;
    double boundImproved = 0.0;
};

/// Both bound curves over n in [nFirst, nLast] (n >= 2), constant 1.
std::vector<BoundCurvePoint> boundCurves(std::size_t nFirst, std::size_t nLast, double gamma, double delta);

/// CSV with columns n,gamma,delta,samples,threshold,empirical_prob,bound45,bound_improved.
void writeProbeCsv(std::ostream& out, std::span<const ProbeResult> rows);

}  // namespace cqopt
