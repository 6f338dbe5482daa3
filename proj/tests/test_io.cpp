#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "cqopt/errors.hpp"
#include "cqopt/io.hpp"
#include "support.hpp"

using namespace cqopt;

namespace {

CQTensor tensorFrom(const std::string& text) {
    std::istringstream in(text);
    return parseTensor(in);
}

PolyProblem polyFrom(const std::string& text) {
    std::istringstream in(text);
    return parsePoly(in);
}

std::size_t tensorErrorLine(const std::string& text) {
    try {
        tensorFrom(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

std::size_t polyErrorLine(const std::string& text) {
    try {
        polyFrom(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("tensor file parses with zero fill") {
    const CQTensor t = tensorFrom("CQT1\norder 2\ndims 2 3\n1 1 1 0 0 0\n\n2 3 0.5 -1 2 1e-3\n");
    CHECK(t.dims() == std::vector<std::size_t>{2, 3});
    CHECK(t({0, 0}) == CQuat(1));
    CHECK(t({1, 2}) == CQuat(0.5, -1, 2, 1e-3));
    CHECK(t({0, 1}) == CQuat{});
}

TEST_CASE("canonical tensor files round-trip byte for byte") {
    const std::string canonical = "CQT1\norder 3\ndims 2 1 2\n1 1 2 1 0 0 0\n2 1 1 0.1 -2.5 3 1e-20\n";
    CHECK(serializeTensor(tensorFrom(canonical)) == canonical);

    testkit::Gen g(41);
    for (int n = 0; n < 20; ++n) {
        std::vector<std::size_t> dims(1 + g.index(3));
        for (auto& d : dims) d = 1 + g.index(3);
        CQTensor t = g.tensor(dims);
        t.at(0) = CQuat{};
        const std::string s = serializeTensor(t);
        CHECK(tensorFrom(s) == t);
        CHECK(serializeTensor(tensorFrom(s)) == s);
    }
}

TEST_CASE("tensor parse errors carry line numbers") {
    CHECK(tensorErrorLine("CQT2\n") == 1);
    CHECK(tensorErrorLine("") == 1);
    CHECK(tensorErrorLine("CQT1\norder x\n") == 2);
    CHECK(tensorErrorLine("CQT1\norder 0\ndims\n") == 2);
    CHECK(tensorErrorLine("CQT1\norder 2\ndims 2\n") == 3);
    CHECK(tensorErrorLine("CQT1\norder 2\n") == 3);
    CHECK(tensorErrorLine("CQT1\norder 2\ndims 2 0\n") == 3);
    CHECK(tensorErrorLine("CQT1\norder 2\ndims 2 2\n1 1 1 0 0 0\n3 1 1 0 0 0\n") == 5);
    CHECK(tensorErrorLine("CQT1\norder 2\ndims 2 2\n0 1 1 0 0 0\n") == 4);
    CHECK(tensorErrorLine("CQT1\norder 2\ndims 2 2\n1 1 1 0 0\n") == 4);
    CHECK(tensorErrorLine("CQT1\norder 2\ndims 2 2\n1 1 1 0 zero 0\n") == 4);
    CHECK(tensorErrorLine("CQT1\norder 2\ndims 2 2\n1 1 1 0 0 0\n\n1 1 2 0 0 0\n") == 6);
    CHECK(tensorErrorLine("CQT1\norder 2\ndims 2 2\n1 1 nan 0 0 0\n") == 4);

    try {
        tensorFrom("CQT1\norder 2\ndims 2 2\n1 1 1 0 0 0\n1 1 1 0 0 0\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()) == "line 5: duplicate entry index");
    }
}

TEST_CASE("polynomial files") {
    const PolyProblem p = polyFrom("CQP1\ndegree 3\ndim 2\n1 1 2 1 0 0 0\n1 1 2 0 1 0 0\n2 2 2 0 0 0 -1\n");
    CHECK(p.degree() == 3);
    CHECK(p.dim() == 2);
    REQUIRE(p.coefficients().size() == 2);
    CHECK(p.coefficients().at({0, 0, 1}) == CQuat(1, 1, 0, 0));
    CHECK(serializePoly(p) == "CQP1\ndegree 3\ndim 2\n1 1 2 1 1 0 0\n2 2 2 0 0 0 -1\n");

    const std::string canonical = "CQP1\ndegree 2\ndim 3\n1 3 0.25 0 0 0\n2 2 -1 0 1 0\n";
    CHECK(serializePoly(polyFrom(canonical)) == canonical);
}

TEST_CASE("polynomial parse errors") {
    CHECK(polyErrorLine("CQT1\n") == 1);
    CHECK(polyErrorLine("CQP1\ndegree 2\ndim 2\n2 1 1 0 0 0\n") == 4);
    CHECK(polyErrorLine("CQP1\ndegree 2\ndim 2\n1 3 1 0 0 0\n") == 4);
    CHECK(polyErrorLine("CQP1\ndegree 2\ndim 0\n") == 3);
    CHECK(polyErrorLine("CQP1\ndim 2\n") == 2);
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(readTensorFile("/nonexistent/none.cqt"), std::runtime_error);
}
