#include "cqopt/prob_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cqopt/errors.hpp"
#include "cqopt/parallel.hpp"
#include "cqopt/sampling.hpp"

namespace cqopt {

namespace {

constexpr std::size_t kBatch = 4096;

double improvedFactor(double delta) { return 2.0 + delta + 0.5 * delta * delta; }

void validateTail(std::size_t n, double gamma, const TailOptions& options) {
    if (n < 2) throw PreconditionError("tail probe: n must be at least 2");
    if (!(gamma > 0.0)) throw PreconditionError("tail probe: gamma must be positive");
    if (!(gamma * std::log(static_cast<double>(n)) < static_cast<double>(n)))
        throw PreconditionError("tail probe: hypothesis gamma ln n < n violated");
    if (options.samples < 1000) throw PreconditionError("tail probe: need at least 1000 samples");
    if (options.direction) {
        if (options.direction->size() != n) throw DimensionError("tail probe: direction length must be n");
        if (options.direction->norm() == 0.0) throw PreconditionError("tail probe: direction is zero");
    }
}

double tailThreshold(std::size_t n, double gamma) {
    const double nn = static_cast<double>(n);
    return std::sqrt(gamma * std::log(nn) / nn);
}

/// Visits every draw; onDraw(sampleIndex, hit). Returns hits per batch.
template <typename OnDraw>
std::vector<std::size_t> runTailDraws(std::size_t n, double gamma, const TailOptions& options, OnDraw&& onDraw) {
    const CQVector a = options.direction ? *options.direction : CQVector::basis(n, 0);
    const double level = tailThreshold(n, gamma) * a.norm();
    const std::size_t batches = (options.samples + kBatch - 1) / kBatch;
    std::vector<std::size_t> hits(batches, 0);
    parallelFor(batches, options.threads, 1, [&](std::size_t b) {
        RandomSource src(options.seed, b);
        const std::size_t first = b * kBatch;
        const std::size_t last = std::min(options.samples, first + kBatch);
        std::size_t count = 0;
        for (std::size_t s = first; s < last; ++s) {
            const CQVector xi = sampleSphere(n, src);
            const bool hit = re(dotT(a, xi)) >= level;
            count += hit ? 1 : 0;
            onDraw(s, hit);
        }
        hits[b] = count;
    });
    return hits;
}

}  // namespace

double ProbeResult::standardError() const {
    if (samples == 0) return 0.0;
    return std::sqrt(empiricalProb * (1.0 - empiricalProb) / static_cast<double>(samples));
}

ProbeResult estimateTailProb(std::size_t n, double gamma, const TailOptions& options) {
    validateTail(n, gamma, options);
    const auto hits = runTailDraws(n, gamma, options, [](std::size_t, bool) {});

    ProbeResult r;
    r.n = n;
    r.gamma = gamma;
    r.delta = options.delta;
    r.samples = options.samples;
    r.hits = std::accumulate(hits.begin(), hits.end(), std::size_t{0});
    r.empiricalProb = static_cast<double>(r.hits) / static_cast<double>(r.samples);
    r.threshold = tailThreshold(n, gamma);
    const double nn = static_cast<double>(n);
    const double sqrtLog = std::sqrt(std::log(nn));
    r.bound45 = std::pow(nn, -4.5 * gamma) / sqrtLog;
    r.boundImproved = options.delta ? std::pow(nn, -improvedFactor(*options.delta) * gamma) / sqrtLog
                                    : std::numeric_limits<double>::quiet_NaN();
    return r;
}

std::vector<std::uint8_t> tailEventMask(std::size_t n, double gamma, const TailOptions& options) {
    validateTail(n, gamma, options);
    std::vector<std::uint8_t> mask(options.samples, 0);
    runTailDraws(n, gamma, options, [&](std::size_t s, bool hit) { mask[s] = hit ? 1 : 0; });
    return mask;
}

ChiSquareTail checkChiSquareTail(double t, std::span<const double> b, std::size_t samples, std::uint64_t seed,
                                 unsigned threads) {
    if (!(t > 0.0) || !std::isfinite(t)) throw PreconditionError("chi-square tail: t must be positive");
    if (b.empty()) throw PreconditionError("chi-square tail: b is empty");
    if (std::any_of(b.begin(), b.end(), [](double v) { return !(v >= 0.0) || !std::isfinite(v); }))
        throw PreconditionError("chi-square tail: b must be nonnegative");
    if (samples == 0) throw PreconditionError("chi-square tail: need at least one sample");

    double norm2 = 0.0;
    double normInf = 0.0;
    for (double v : b) {
        norm2 += v * v;
        normInf = std::max(normInf, v);
    }
    if (normInf == 0.0) throw PreconditionError("chi-square tail: b is zero");
    const double level = 2.0 * std::sqrt(norm2) * std::sqrt(t) + 2.0 * normInf * t;

    const std::size_t batches = (samples + kBatch - 1) / kBatch;
    std::vector<std::size_t> hits(batches, 0);
    parallelFor(batches, threads, 1, [&](std::size_t batch) {
        RandomSource src(seed, batch);
        const std::size_t last = std::min(samples, (batch + 1) * kBatch);
        std::size_t count = 0;
        for (std::size_t s = batch * kBatch; s < last; ++s) {
            double z = 0.0;
            for (double v : b) {
                const double eta = src.normal();
                z += v * (eta * eta - 1.0);
            }
            if (z >= level) ++count;
        }
        hits[batch] = count;
    });

    ChiSquareTail out;
    out.t = t;
    out.samples = samples;
    out.empirical = static_cast<double>(std::accumulate(hits.begin(), hits.end(), std::size_t{0})) /
                    static_cast<double>(samples);
    out.bound = std::exp(-t);
    out.slack = 4.0 * std::sqrt(out.bound / static_cast<double>(samples));
    out.passed = out.empirical <= out.bound + out.slack;
    return out;
}

std::vector<BoundCurvePoint> boundCurves(std::size_t nFirst, std::size_t nLast, double gamma, double delta) {
    if (nFirst < 2 || nLast < nFirst) throw PreconditionError("boundCurves: need 2 <= nFirst <= nLast");
    if (!(gamma > 0.0)) throw PreconditionError("boundCurves: gamma must be positive");
    if (!(delta >= 0.0)) throw PreconditionError("boundCurves: delta must be nonnegative");

    const double factor = improvedFactor(delta);
    std::vector<BoundCurvePoint> out;
    for (std::size_t n = nFirst; n <= nLast; ++n) {
        const double nn = static_cast<double>(n);
        const double sqrtLog = std::sqrt(std::log(nn));
        BoundCurvePoint p;
        p.n = n;
        p.exponent45 = 4.5 * gamma;
        p.exponentImproved = factor * gamma;
        p.bound45 = std::pow(nn, -p.exponent45) / sqrtLog;
        p.boundImproved = std::pow(nn, -p.exponentImproved) / sqrtLog;
        if (factor < 4.5 && !(p.exponentImproved < p.exponent45))
            throw std::logic_error("boundCurves: improved exponent is not below 4.5 gamma");
        out.push_back(p);
    }
    return out;
}

void writeProbeCsv(std::ostream& out, std::span<const ProbeResult> rows) {
    out << "n,gamma,delta,samples,threshold,empirical_prob,bound45,bound_improved\n";
    for (const auto& r : rows) {
        out << r.n << ',' << formatReal(r.gamma) << ',' << (r.delta ? formatReal(*r.delta) : std::string()) << ','
            << r.samples << ',' << formatReal(r.threshold) << ',' << formatReal(r.empiricalProb) << ','
            << formatReal(r.bound45) << ',' << (r.delta ? formatReal(r.boundImproved) : std::string()) << '\n';
    }
}

}  // namespace cqopt
