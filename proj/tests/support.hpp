#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "cqopt/forms.hpp"
#include "cqopt/linalg.hpp"

namespace testkit {

using cqopt::CQuat;
using cqopt::CQVector;

// Test-side randomness, separate from the library's RandomSource.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }

    CQuat quat(double scale = 1.0) {
        return {scale * uniform(), scale * uniform(), scale * uniform(), scale * uniform()};
    }
    CQVector vec(std::size_t n) {
        CQVector v(n);
        for (auto& q : v) q = quat();
        return v;
    }
    CQVector unit(std::size_t n) {
        CQVector v = vec(n);
        return (1.0 / v.norm()) * v;
    }
    cqopt::CQMatrix matrix(std::size_t r, std::size_t c) {
        cqopt::CQMatrix m(r, c);
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < c; ++b) m(a, b) = quat();
        return m;
    }
    cqopt::CQTensor tensor(std::vector<std::size_t> dims) {
        cqopt::CQTensor t(std::move(dims));
        for (std::size_t i = 0; i < t.size(); ++i) t.at(i) = quat();
        return t;
    }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// The ring splits as C x C through the idempotents (1 +- j)/2:
// w + x i + y j + z k  ->  ((w + y) + (x + z) i, (w - y) + (x - z) i).
using Split = std::pair<std::complex<double>, std::complex<double>>;

inline Split split(const CQuat& q) { return {{q.w + q.y, q.x + q.z}, {q.w - q.y, q.x - q.z}}; }

inline CQuat unsplit(const Split& s) {
    const auto [p, m] = s;
    return {(p.real() + m.real()) / 2, (p.imag() + m.imag()) / 2, (p.real() - m.real()) / 2,
            (p.imag() - m.imag()) / 2};
}

inline CQuat oracleMul(const CQuat& a, const CQuat& b) {
    const Split sa = split(a);
    const Split sb = split(b);
    return unsplit({sa.first * sb.first, sa.second * sb.second});
}

inline double maxAbsDiff(const CQuat& a, const CQuat& b) {
    return std::max({std::abs(a.w - b.w), std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

// Full contraction by walking every multi-index, multiplied in the split form.
inline CQuat oracleForm(const cqopt::CQTensor& t, const std::vector<CQVector>& xs) {
    const std::size_t d = t.order();
    std::vector<std::size_t> idx(d, 0);
    std::complex<double> accP = 0.0;
    std::complex<double> accM = 0.0;
    for (std::size_t lin = 0; lin < t.size(); ++lin) {
        t.multiIndex(lin, idx);
        Split term = split(t.at(lin));
        for (std::size_t k = 0; k < d; ++k) {
            const Split s = split(xs[k][idx[k]]);
            term.first *= s.first;
            term.second *= s.second;
        }
        accP += term.first;
        accM += term.second;
    }
    return unsplit({accP, accM});
}

// Monomial-by-monomial evaluation in the split form.
inline CQuat oraclePoly(const cqopt::PolyProblem& p, const CQVector& x) {
    std::complex<double> accP = 0.0;
    std::complex<double> accM = 0.0;
    for (const auto& [key, a] : p.coefficients()) {
        Split term = split(a);
        for (auto i : key) {
            const Split s = split(x[i]);
            term.first *= s.first;
            term.second *= s.second;
        }
        accP += term.first;
        accM += term.second;
    }
    return unsplit({accP, accM});
}

inline cqopt::PolyProblem randomPoly(Gen& g, std::size_t d, std::size_t n, std::size_t terms) {
    cqopt::PolyProblem p(d, n);
    for (std::size_t t = 0; t < terms; ++t) {
        std::vector<std::size_t> key(d);
        for (auto& i : key) i = g.index(n);
        p.add(key, g.quat());
    }
    return p;
}

inline cqopt::CQTensor realOnes(std::vector<std::size_t> dims) {
    cqopt::CQTensor t(std::move(dims));
    for (std::size_t i = 0; i < t.size(); ++i) t.at(i) = CQuat(1.0);
    return t;
}

}  // namespace testkit
