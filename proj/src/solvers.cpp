#include "cqopt/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cqopt/errors.hpp"
#include "cqopt/parallel.hpp"
#include "cqopt/sampling.hpp"

namespace cqopt {

namespace {

constexpr double kDegenerateNorm = 1e-12;
constexpr double kIdentityTolerance = 1e-8;

bool isZero(std::span<const CQuat> entries) {
    return std::all_of(entries.begin(), entries.end(), [](const CQuat& q) { return q == CQuat{}; });
}

struct SlotPlan {
    std::vector<std::size_t> sampled;  // ascending dimension order (stable)
    std::size_t rowSlot = 0;
    std::size_t colSlot = 1;
};

SlotPlan planSlots(const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> perm(dims.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return dims[a] < dims[b]; });
    SlotPlan plan;
    plan.sampled.assign(perm.begin(), perm.end() - 2);
    plan.rowSlot = perm[perm.size() - 2];
    plan.colSlot = perm[perm.size() - 1];
    return plan;
}

struct TrialResult {
    std::vector<CQVector> solution;
    double objective = 0.0;
    bool degenerate = false;
};

TrialResult runTrial(const MultilinearForm& f, const SlotPlan& plan, std::uint64_t seed, std::size_t index) {
    const std::size_t d = f.order();
    RandomSource src(seed, index);
    std::vector<CQVector> solution(d);
    for (std::size_t slot : plan.sampled) solution[slot] = sampleSphere(f.dims()[slot], src);

    std::vector<CQVector> fixed;
    fixed.reserve(d - 2);
    for (std::size_t k = 0; k < d; ++k)
        if (k != plan.rowSlot && k != plan.colSlot) fixed.push_back(solution[k]);

    BilinearSolution exact = solveBilinear(contractToMatrix(f, fixed, plan.rowSlot, plan.colSlot));
    solution[plan.rowSlot] = std::move(exact.x);
    solution[plan.colSlot] = std::move(exact.y);

    TrialResult out;
    out.objective = re(evalForm(f, solution));
    out.degenerate = exact.degenerate;
    out.solution = std::move(solution);
    return out;
}

void checkGamma(double gamma, double n, const char* what) {
    const double upper = n / std::log(n);
    if (!(gamma > 0.0) || !(gamma < upper)) {
        throw PreconditionError(std::string(what) + ": gamma must lie in (0, " + std::to_string(upper) + ")");
    }
}

double factorial(std::size_t d) {
    double f = 1.0;
    for (std::size_t i = 2; i <= d; ++i) f *= static_cast<double>(i);
    return f;
}

}  // namespace

BilinearSolution solveBilinear(const CQMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) throw DimensionError("solveBilinear: empty matrix");
    BilinearSolution out;
    if (isZero(a.entries())) {
        out.x = CQVector::basis(a.rows(), 0);
        out.y = CQVector::basis(a.cols(), 0);
        out.degenerate = true;
        return out;
    }
    SingularPair pair = topSingularPair(realBlock(a));
    out.x = unvecReal(pair.left);
    out.y = unvecReal(pair.right);
    out.value = pair.value;
    return out;
}

SolveReport algorithm1(const MultilinearForm& f, const SolveOptions& options) {
    const std::size_t d = f.order();
    if (d < 2) throw PreconditionError("algorithm1: order must be at least 2");
    if (options.trials < 1) throw PreconditionError("algorithm1: trials must be at least 1");
    for (auto c : options.checkpoints)
        if (c < 1 || c > options.trials) throw PreconditionError("algorithm1: checkpoint outside [1, trials]");

    SolveReport report;
    report.seed = options.seed;
    if (options.gamma) report.theoreticalRatio = theoreticalRatio(d, f.dims(), *options.gamma);

    if (d == 2) {
        const auto& t = f.tensor();
        CQMatrix a(t.dim(0), t.dim(1), std::vector<CQuat>(t.entries().begin(), t.entries().end()));
        BilinearSolution exact = solveBilinear(a);
        report.solution = {exact.x, exact.y};
        report.objective = re(evalForm(f, report.solution));
        report.trials = 1;
        report.bestTrialIndex = 0;
        report.degenerate = exact.degenerate;
        report.checkpointBest.assign(options.checkpoints.size(), report.objective);
        return report;
    }

    const SlotPlan plan = planSlots(f.dims());
    std::vector<double> objectives(options.trials);
    parallelFor(options.trials, options.threads, 64, [&](std::size_t t) {
        objectives[t] = runTrial(f, plan, options.seed, t).objective;
    });

    // Sequential running max keeps ties and checkpoints schedule-independent.
    std::vector<std::size_t> order(options.checkpoints.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return options.checkpoints[a] < options.checkpoints[b]; });
    report.checkpointBest.assign(options.checkpoints.size(), 0.0);
    std::size_t best = 0;
    std::size_t nextCheckpoint = 0;
    for (std::size_t t = 0; t < options.trials; ++t) {
        if (objectives[t] > objectives[best]) best = t;
        while (nextCheckpoint < order.size() && options.checkpoints[order[nextCheckpoint]] == t + 1) {
            report.checkpointBest[order[nextCheckpoint]] = objectives[best];
            ++nextCheckpoint;
        }
    }

    TrialResult winner = runTrial(f, plan, options.seed, best);
    report.solution = std::move(winner.solution);
    report.objective = winner.objective;
    report.degenerate = winner.degenerate;
    report.trials = options.trials;
    report.bestTrialIndex = best;
    return report;
}

SolveReport algorithm1(const MultilinearForm& f, std::size_t trials, std::uint64_t seed) {
    SolveOptions options;
    options.trials = trials;
    options.seed = seed;
    return algorithm1(f, options);
}

SolveReport algorithm2(const PolyProblem& p, const SolveOptions& options) {
    const std::size_t d = p.degree();
    const std::size_t n = p.dim();
    if (d < 2) throw PreconditionError("algorithm2: degree must be at least 2");

    SolveOptions relaxOptions = options;
    relaxOptions.gamma.reset();
    const MultilinearForm f = symmetrize(p);
    SolveReport relaxed = algorithm1(f, relaxOptions);
    const std::vector<CQVector>& factors = relaxed.solution;

    auto reH = [&](const CQVector& x) { return re(evalPoly(p, x)); };
    auto combine = [&](std::size_t mask, double scale) {
        CQVector y(n);
        for (std::size_t k = 0; k < d; ++k) {
            const double s = ((mask >> k) & 1U) ? -scale : scale;
            for (std::size_t i = 0; i < n; ++i) y[i] += s * factors[k][i];
        }
        return y;
    };

    const bool odd = d % 2 == 1;
    const std::size_t patterns = std::size_t{1} << d;
    std::size_t bestMask = 0;
    double bestValue = -std::numeric_limits<double>::infinity();
    for (std::size_t mask = 0; mask < patterns; ++mask) {
        const bool negativeProduct = std::popcount(mask) % 2 == 1;
        double value = 0.0;
        if (odd) {
            // Re(prod beta_i * H(x_beta / d)).
            value = reH(combine(mask, 1.0 / static_cast<double>(d)));
            if (negativeProduct) value = -value;
        } else {
            if (negativeProduct) continue;
            value = reH(combine(mask, 1.0));
        }
        if (value > bestValue) {
            bestValue = value;
            bestMask = mask;
        }
    }

    SolveReport report;
    report.seed = options.seed;
    report.trials = relaxed.trials;
    report.bestTrialIndex = relaxed.bestTrialIndex;
    report.checkpointBest = relaxed.checkpointBest;
    report.relaxation = factors;
    report.degenerate = relaxed.degenerate;
    report.signs.resize(d);
    for (std::size_t k = 0; k < d; ++k) report.signs[k] = ((bestMask >> k) & 1U) ? -1 : 1;
    if (options.gamma) report.theoreticalRatio = tauP(d, n, *options.gamma);

    CQVector candidate = combine(bestMask, odd ? 1.0 / static_cast<double>(d) : 1.0);
    const double candidateNorm = candidate.norm();
    CQVector x;
    if (candidateNorm < kDegenerateNorm) {
        report.degenerate = true;
        std::size_t pick = 0;
        for (std::size_t k = 1; k < d; ++k)
            if (reH(factors[k]) > reH(factors[pick])) pick = k;
        x = factors[pick];
    } else {
        x = (1.0 / candidateNorm) * std::move(candidate);
        if (odd) {
            CQVector flipped = -x;
            if (reH(flipped) > reH(x)) x = std::move(flipped);
        }
    }
    report.objective = reH(x);
    report.solution = {std::move(x)};
    return report;
}

SolveReport algorithm2(const PolyProblem& p, std::size_t trials, std::uint64_t seed) {
    SolveOptions options;
    options.trials = trials;
    options.seed = seed;
    return algorithm2(p, options);
}

double estimateMinimum(const PolyProblem& p, const SolveOptions& options) {
    SolveOptions plain = options;
    plain.gamma.reset();
    return -algorithm2(p.negated(), plain).objective;
}

RankOneResult bestRankOne(const CQTensor& t, const SolveOptions& options) {
    if (isZero(t.entries())) throw PreconditionError("bestRankOne: tensor is zero");
    if (t.order() < 2) throw PreconditionError("bestRankOne: tensor order must be at least 2");

    const MultilinearForm f(t);
    RankOneResult out;
    out.report = algorithm1(f, options);
    out.factors = out.report.solution;
    out.lambda = re(evalForm(f, out.factors));
    if (out.lambda < 0.0) {
        out.factors[0] = -out.factors[0];
        out.lambda = -out.lambda;
    }
    const double normSq = tensorInner(t, t);
    out.residual = std::sqrt(std::max(0.0, normSq - out.lambda * out.lambda));

    const CQTensor fitted = out.lambda * outerProduct(out.factors);
    out.directResidual = tensorNorm(fitted - t);
    out.identityHolds = std::fabs(out.residual * out.residual - out.directResidual * out.directResidual) <=
                        kIdentityTolerance;
    return out;
}

RankOneResult bestRankOne(const CQTensor& t, std::size_t trials, std::uint64_t seed) {
    SolveOptions options;
    options.trials = trials;
    options.seed = seed;
    return bestRankOne(t, options);
}

double theoreticalRatio(std::size_t d, std::span<const std::size_t> dims, double gamma) {
    if (dims.size() != d) throw DimensionError("theoreticalRatio: need one dimension per slot");
    if (d < 2) throw PreconditionError("theoreticalRatio: order must be at least 2");
    std::vector<std::size_t> sorted(dims.begin(), dims.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < 2) throw PreconditionError("theoreticalRatio: all dimensions must be at least 2");
    checkGamma(gamma, static_cast<double>(sorted.front()), "theoreticalRatio");
    double ratio = std::pow(gamma, static_cast<double>(d - 2) / 2.0);
    for (std::size_t k = 0; k + 2 < d; ++k) {
        const double n = static_cast<double>(sorted[k]);
        ratio *= std::sqrt(std::log(n) / n);
    }
    return ratio;
}

double tauP(std::size_t d, std::size_t n, double gamma) {
    if (d < 2) throw PreconditionError("tauP: degree must be at least 2");
    if (n < 2) throw PreconditionError("tauP: dimension must be at least 2");
    const double nn = static_cast<double>(n);
    checkGamma(gamma, nn, "tauP");
    const double dd = static_cast<double>(d);
    return std::pow(dd, -dd) * factorial(d) * std::pow(gamma * std::log(nn) / nn, (dd - 2.0) / 2.0);
}

}  // namespace cqopt
