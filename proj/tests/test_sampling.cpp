#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cqopt/errors.hpp"
#include "cqopt/parallel.hpp"
#include "cqopt/sampling.hpp"

using namespace cqopt;

TEST_CASE("streams are reproducible and distinct") {
    RandomSource a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x != c.uniform());
    CHECK(x != d.uniform());
    CHECK(mixSeed(1, 2) != mixSeed(2, 1));
}

TEST_CASE("engine and transforms are pinned") {
    // mt19937_64 seeded with mixSeed, top 53 bits.
    RandomSource src(7, 3);
    std::mt19937_64 ref(mixSeed(7, 3));
    const double u = static_cast<double>(ref() >> 11) * 0x1.0p-53;
    CHECK(src.uniform() == u);

    // Box-Muller, cosine branch first.
    const double u1 = 1.0 - static_cast<double>(ref() >> 11) * 0x1.0p-53;
    const double u2 = static_cast<double>(ref() >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    CHECK(src.normal() == r * std::cos(2 * std::numbers::pi * u2));
    CHECK(src.normal() == r * std::sin(2 * std::numbers::pi * u2));
}

TEST_CASE("uniform and normal moments") {
    RandomSource src(1, 0);
    const int n = 200000;
    double su = 0, sn = 0, sn2 = 0, sn4 = 0;
    for (int i = 0; i < n; ++i) {
        const double u = src.uniform();
        CHECK_UNARY(u >= 0.0);
        CHECK_UNARY(u < 1.0);
        su += u;
        const double z = src.normal();
        sn += z;
        sn2 += z * z;
        sn4 += z * z * z * z;
    }
    CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(std::abs(sn / n) < 0.01);
    CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.02));
    CHECK(sn4 / n == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("signs are balanced") {
    RandomSource src(2, 0);
    long sum = 0;
    for (int i = 0; i < 100000; ++i) {
        const int s = src.sign();
        CHECK_UNARY(s == 1 || s == -1);
        sum += s;
    }
    CHECK(std::abs(sum) < 1500);
    CHECK(sampleSigns(0, src).empty());
    CHECK(sampleSigns(5, src).size() == 5);
}

TEST_CASE("sphere samples are unit and isotropic") {
    RandomSource src(3, 0);
    const std::size_t n = 3;
    std::vector<double> second(4 * n, 0.0);
    const int count = 40000;
    for (int s = 0; s < count; ++s) {
        const CQVector x = sampleSphere(n, src);
        CHECK(std::abs(x.norm() - 1.0) <= 1e-12);
        const auto v = vecReal(x);
        for (std::size_t i = 0; i < v.size(); ++i) second[i] += v[i] * v[i];
    }
    // Each of the 4n real coordinates carries 1 / (4n) of the mass.
    for (double m : second) CHECK(m / count == doctest::Approx(1.0 / 12.0).epsilon(0.05));
}

TEST_CASE("quaternion normal is component-major") {
    RandomSource a(4, 0), b(4, 0);
    const CQVector v = sampleQNormal(2, a);
    const double w0 = b.normal(), w1 = b.normal(), x0 = b.normal();
    CHECK(v[0].w == w0);
    CHECK(v[1].w == w1);
    CHECK(v[0].x == x0);
    CHECK_THROWS_AS(sampleQNormal(0, a), PreconditionError);
}

TEST_CASE("parallelFor covers every index and rethrows") {
    std::vector<int> hits(1000, 0);
    parallelFor(hits.size(), 4, 7, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallelFor(100, 4, 1,
                                [](std::size_t i) {
                                    if (i == 57) throw std::runtime_error("boom");
                                }),
                    std::runtime_error);
    CHECK(resolveThreads(3) == 3);
    CHECK(resolveThreads(0) >= 1);
}
