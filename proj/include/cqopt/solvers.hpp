#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cqopt/forms.hpp"
#include "cqopt/linalg.hpp"

namespace cqopt {

struct BilinearSolution {
    CQVector x;
    CQVector y;
    double value = 0.0;
    bool degenerate = false;  ///< A == 0; (x, y) is an arbitrary unit pair
};

/// Exact maximizer of Re(x^T A y) over unit x, y: the spectral norm of
/// realBlock(A) and its dominant singular pair mapped back through vecReal.
BilinearSolution solveBilinear(const CQMatrix& a);

struct SolveReport {
    /// One unit vector per slot (multilinear solves) or a single vector
    /// (polynomial solves).
    std::vector<CQVector> solution;
    double objective = 0.0;
    std::size_t trials = 0;
    std::size_t bestTrialIndex = 0;
    std::uint64_t seed = 0;
    std::optional<double> theoreticalRatio;
    std::optional<double> upperBound;
    bool degenerate = false;
    /// Running best objective after each requested checkpoint trial count.
    std::vector<double> checkpointBest;
    /// Polynomial solves only: relaxation factors and the chosen signs.
    std::vector<CQVector> relaxation;
    std::vector<int> signs;
};

struct SolveOptions {
    std::size_t trials = 1;
    std::uint64_t seed = 42;
    /// Trial counts (each <= trials) at which to record the running best.
    std::vector<std::size_t> checkpoints;
    /// Worker threads for the trial loop; 0 picks hardware concurrency.
    unsigned threads = 0;
    /// When set, the ratio formula for this gamma is attached to the report.
    std::optional<double> gamma;
};

/// Randomized multilinear maximization over unit spheres.
///
/// Slots are ordered by dimension (stable); the d - 2 smallest are sampled
/// uniformly on their spheres and the two largest are solved exactly with
/// solveBilinear. Trial t draws from RandomSource(seed, t), so the outcome
/// does not depend on the thread count. The best trial wins; ties go to the
/// lowest index. For d == 2 the exact solve is returned with trials == 1.
SolveReport algorithm1(const MultilinearForm& f, const SolveOptions& options);
SolveReport algorithm1(const MultilinearForm& f, std::size_t trials, std::uint64_t seed);

/// Randomized homogeneous polynomial maximization over the unit sphere via
/// the super-symmetric relaxation and an exhaustive sign search.
SolveReport algorithm2(const PolyProblem& p, const SolveOptions& options);
SolveReport algorithm2(const PolyProblem& p, std::size_t trials, std::uint64_t seed);

/// Runs algorithm2 on -H and returns the negated objective: an upper
/// estimate of min Re H over the sphere.
double estimateMinimum(const PolyProblem& p, const SolveOptions& options);

struct RankOneResult {
    double lambda = 0.0;
    std::vector<CQVector> factors;
    /// sqrt(max(0, |T|^2 - lambda^2))
    double residual = 0.0;
    /// |lambda * (x^1 o ... o x^d) - T| computed directly.
    double directResidual = 0.0;
    /// Whether residual^2 and directResidual^2 agree within 1e-8.
    bool identityHolds = false;
    SolveReport report;
};

/// Rank-one approximation through algorithm1 with lambda = Re F(factors),
/// sign-normalized so lambda >= 0. Throws PreconditionError for T == 0.
RankOneResult bestRankOne(const CQTensor& t, const SolveOptions& options);
RankOneResult bestRankOne(const CQTensor& t, std::size_t trials, std::uint64_t seed);

/// gamma^((d-2)/2) * prod over the d-2 smallest dims of sqrt(ln n_k / n_k).
double theoreticalRatio(std::size_t d, std::span<const std::size_t> dims, double gamma);

/// d^-d d! (gamma ln n / n)^((d-2)/2)
double tauP(std::size_t d, std::size_t n, double gamma);

}  // namespace cqopt
