#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cqopt/errors.hpp"
#include "cqopt/forms.hpp"
#include "support.hpp"

using namespace cqopt;
using testkit::maxAbsDiff;

namespace {

std::vector<std::size_t> randomDims(testkit::Gen& g, std::size_t d, std::size_t maxN) {
    std::vector<std::size_t> dims(d);
    for (auto& n : dims) n = 1 + g.index(maxN);
    return dims;
}

std::vector<CQVector> randomArgs(testkit::Gen& g, const std::vector<std::size_t>& dims) {
    std::vector<CQVector> xs;
    for (auto n : dims) xs.push_back(g.vec(n));
    return xs;
}

double factorial(std::size_t d) { return d <= 1 ? 1.0 : static_cast<double>(d) * factorial(d - 1); }

}  // namespace

TEST_CASE("evalForm against index-walk oracle") {
    testkit::Gen g(11);
    for (int n = 0; n < 100; ++n) {
        const auto dims = randomDims(g, 1 + g.index(4), 3);
        const MultilinearForm f(g.tensor(dims));
        const auto xs = randomArgs(g, dims);
        CHECK(maxAbsDiff(evalForm(f, xs), testkit::oracleForm(f.tensor(), xs)) <= 1e-10);
    }
}

TEST_CASE("evalForm rejects mismatched arguments") {
    const MultilinearForm f(CQTensor({2, 3}));
    CHECK_THROWS_AS(evalForm(f, std::vector<CQVector>{CQVector(2)}), DimensionError);
    CHECK_THROWS_AS(evalForm(f, std::vector<CQVector>{CQVector(2), CQVector(2)}), DimensionError);
}

TEST_CASE("all-ones 2x2x2 at the normalized ones vector") {
    const MultilinearForm f(testkit::realOnes({2, 2, 2}));
    const CQVector u{CQuat(1 / std::sqrt(2.0)), CQuat(1 / std::sqrt(2.0))};
    const std::vector<CQVector> xs{u, u, u};
    CHECK(re(evalForm(f, xs)) == doctest::Approx(std::sqrt(8.0)));
}

TEST_CASE("contract leaves a linear functional in the free slot") {
    testkit::Gen g(12);
    for (int n = 0; n < 50; ++n) {
        const auto dims = randomDims(g, 2 + g.index(3), 3);
        const MultilinearForm f(g.tensor(dims));
        auto xs = randomArgs(g, dims);
        const std::size_t slot = g.index(dims.size());
        std::vector<CQVector> fixed;
        for (std::size_t k = 0; k < dims.size(); ++k)
            if (k != slot) fixed.push_back(xs[k]);
        const CQVector v = contract(f, fixed, slot);
        CHECK(maxAbsDiff(dotT(v, xs[slot]), testkit::oracleForm(f.tensor(), xs)) <= 1e-10);
    }
}

TEST_CASE("contractToMatrix and contractSlot") {
    testkit::Gen g(13);
    for (int n = 0; n < 50; ++n) {
        const auto dims = randomDims(g, 2 + g.index(3), 3);
        const std::size_t d = dims.size();
        const MultilinearForm f(g.tensor(dims));
        const auto xs = randomArgs(g, dims);
        std::size_t row = g.index(d), col = g.index(d);
        while (col == row) col = g.index(d);
        std::vector<CQVector> fixed;
        for (std::size_t k = 0; k < d; ++k)
            if (k != row && k != col) fixed.push_back(xs[k]);
        const CQMatrix m = contractToMatrix(f, fixed, row, col);
        CHECK(m.rows() == dims[row]);
        CHECK(m.cols() == dims[col]);
        CQuat s;
        for (std::size_t a = 0; a < m.rows(); ++a)
            for (std::size_t b = 0; b < m.cols(); ++b) s += xs[row][a] * m(a, b) * xs[col][b];
        CHECK(maxAbsDiff(s, testkit::oracleForm(f.tensor(), xs)) <= 1e-10);

        const std::size_t slot = g.index(d);
        const CQTensor r = contractSlot(f.tensor(), slot, xs[slot]);
        CHECK(r.order() == d - 1);
        std::vector<CQVector> rest;
        for (std::size_t k = 0; k < d; ++k)
            if (k != slot) rest.push_back(xs[k]);
        CHECK(maxAbsDiff(testkit::oracleForm(r, rest), testkit::oracleForm(f.tensor(), xs)) <= 1e-10);
    }
}

TEST_CASE("polynomial terms sort and accumulate") {
    PolyProblem p(3, 2);
    p.add({1, 0, 0}, CQuat(1, 2, 0, 0));
    p.add({0, 1, 0}, CQuat(1, 0, 0, 1));
    REQUIRE(p.coefficients().size() == 1);
    CHECK(p.coefficients().begin()->first == PolyProblem::Key{0, 0, 1});
    CHECK(p.coefficients().begin()->second == CQuat(2, 2, 0, 1));
    CHECK(p.negated().coefficients().begin()->second == CQuat(-2, -2, 0, -1));
    CHECK_THROWS_AS(p.add({0, 2, 0}, CQuat(1)), DimensionError);
    CHECK_THROWS_AS(p.add({0, 0}, CQuat(1)), DimensionError);
}

TEST_CASE("symmetrize spreads each coefficient over its distinct permutations") {
    PolyProblem p(3, 2);
    p.add({0, 0, 1}, CQuat(3));
    p.add({0, 0, 0}, CQuat(0, 5, 0, 0));
    const CQTensor t = symmetrize(p).tensor();
    CHECK(t({0, 0, 1}) == CQuat(1));
    CHECK(t({0, 1, 0}) == CQuat(1));
    CHECK(t({1, 0, 0}) == CQuat(1));
    CHECK(t({0, 0, 0}) == CQuat(0, 5, 0, 0));
    CHECK(t({1, 1, 0}) == CQuat{});
    CHECK(isSuperSymmetric(t));

    PolyProblem q(3, 3);
    q.add({0, 1, 2}, CQuat(6));
    const CQTensor s = symmetrize(q).tensor();
    CHECK(s({2, 1, 0}) == CQuat(1));
    CHECK(s({1, 0, 2}) == CQuat(1));
}

TEST_CASE("diagonal of the symmetrized form equals the polynomial") {
    testkit::Gen g(14);
    for (int n = 0; n < 100; ++n) {
        const std::size_t d = 1 + g.index(4), dim = 1 + g.index(4);
        const PolyProblem p = testkit::randomPoly(g, d, dim, 1 + g.index(6));
        const MultilinearForm f = symmetrize(p);
        CHECK(isSuperSymmetric(f.tensor()));
        const CQVector x = g.vec(dim);
        const CQuat oracle = testkit::oraclePoly(p, x);
        CHECK(maxAbsDiff(evalPoly(p, x), oracle) <= 1e-10);
        CHECK(maxAbsDiff(evalDiagonal(f, x), oracle) <= 1e-10);
    }
}

TEST_CASE("isSuperSymmetric detects asymmetry") {
    CQTensor t({2, 2});
    t({0, 1}) = CQuat(1);
    CHECK_FALSE(isSuperSymmetric(t));
    t({1, 0}) = CQuat(1);
    CHECK(isSuperSymmetric(t));
    CHECK_FALSE(isSuperSymmetric(CQTensor({2, 3})));
}

TEST_CASE("sign-average identity on super-symmetric forms") {
    testkit::Gen g(15);
    for (int n = 0; n < 30; ++n) {
        const std::size_t d = 2 + g.index(3), dim = 1 + g.index(3);
        const MultilinearForm f = symmetrize(testkit::randomPoly(g, d, dim, 4));
        const auto xs = randomArgs(g, std::vector<std::size_t>(d, dim));
        const LinkageResult r = linkageCheck(f, xs);

        // Independent: average over signs of prod(beta) F(y, ..., y) through the oracle.
        CQuat avg;
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
            CQVector y(dim);
            double sp = 1.0;
            for (std::size_t k = 0; k < d; ++k) {
                const double s = (mask >> k) & 1U ? -1.0 : 1.0;
                sp *= s;
                y += s * xs[k];
            }
            avg += sp * testkit::oracleForm(f.tensor(), std::vector<CQVector>(d, y));
        }
        avg = avg / static_cast<double>(std::size_t{1} << d);
        const CQuat rhs = factorial(d) * testkit::oracleForm(f.tensor(), xs);
        CHECK(maxAbsDiff(r.lhs, avg) <= 1e-9);
        CHECK(maxAbsDiff(r.rhs, rhs) <= 1e-9);
        CHECK(maxAbsDiff(r.lhs, r.rhs) <= 1e-9);
    }
}

TEST_CASE("linkageCheck preconditions") {
    CQTensor t({2, 2});
    t({0, 1}) = CQuat(1);
    const std::vector<CQVector> xs{CQVector(2), CQVector(2)};
    CHECK_THROWS_AS(linkageCheck(MultilinearForm(t), xs), PreconditionError);
}

TEST_CASE("liftToPoly evaluates F on stacked blocks") {
    testkit::Gen g(16);
    for (int n = 0; n < 30; ++n) {
        const auto dims = randomDims(g, 1 + g.index(3), 3);
        const MultilinearForm f(g.tensor(dims));
        const PolyProblem p = liftToPoly(f);
        std::size_t total = 0;
        for (auto s : dims) total += s;
        CHECK(p.dim() == total);
        const CQVector stacked = g.vec(total);
        const auto blocks = splitBlocks(stacked, dims);
        CHECK(maxAbsDiff(evalPoly(p, stacked), testkit::oracleForm(f.tensor(), blocks)) <= 1e-10);
    }
    CHECK_THROWS_AS(splitBlocks(CQVector(3), std::vector<std::size_t>{1, 1}), DimensionError);
}
