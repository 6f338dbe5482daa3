#include "cqopt/sampling.hpp"

#include <cmath>
#include <numbers>

#include "cqopt/errors.hpp"

namespace cqopt {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mixSeed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(mixSeed(seed, stream)) {}

double RandomSource::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double RandomSource::normal() {
    if (hasSpare_) {
        hasSpare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    hasSpare_ = true;
    return r * std::cos(theta);
}

int RandomSource::sign() { return (engine_() >> 63) != 0 ? 1 : -1; }

CQVector sampleQNormal(std::size_t n, RandomSource& src) {
    if (n == 0) throw PreconditionError("sampleQNormal: dimension must be at least 1");
    CQVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i].w = src.normal();
    for (std::size_t i = 0; i < n; ++i) v[i].x = src.normal();
    for (std::size_t i = 0; i < n; ++i) v[i].y = src.normal();
    for (std::size_t i = 0; i < n; ++i) v[i].z = src.normal();
    return v;
}

CQVector sampleSphere(std::size_t n, RandomSource& src) {
    for (;;) {
        CQVector eta = sampleQNormal(n, src);
        const double nrm = eta.norm();
        if (nrm < 1e-300) continue;
        eta *= 1.0 / nrm;
        return eta;
    }
}

std::vector<int> sampleSigns(std::size_t d, RandomSource& src) {
    std::vector<int> out(d);
    for (auto& s : out) s = src.sign();
    return out;
}

}  // namespace cqopt
