#include "cqopt/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <vector>

#include "cqopt/errors.hpp"

namespace cqopt {

namespace {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    /// Next line split on whitespace; false at end of input.
    bool next(std::vector<std::string>& tokens) {
        std::string line;
        if (!std::getline(in_, line)) {
            ++line_;
            return false;
        }
        ++line_;
        tokens.clear();
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) tokens.push_back(tok);
        return true;
    }

    /// Like next() but a missing line is an error.
    void expect(std::vector<std::string>& tokens, const char* what) {
        if (!next(tokens)) fail(std::string("unexpected end of file, expected ") + what);
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

    std::size_t line() const noexcept { return line_; }

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

std::size_t parseCount(const LineReader& r, const std::string& tok, const char* what) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) r.fail(std::string("invalid ") + what + " '" + tok + "'");
    return v;
}

double parseReal(const LineReader& r, const std::string& tok) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) r.fail("invalid real '" + tok + "'");
    return v;
}

void expectMagic(LineReader& r, const char* magic) {
    std::vector<std::string> tokens;
    r.expect(tokens, magic);
    if (tokens.size() != 1 || tokens[0] != magic) r.fail(std::string("expected header '") + magic + "'");
}

/// "<keyword> <values...>" with at least one value.
std::vector<std::size_t> expectKeyed(LineReader& r, const char* keyword) {
    std::vector<std::string> tokens;
    r.expect(tokens, keyword);
    if (tokens.size() < 2 || tokens[0] != keyword) r.fail(std::string("expected '") + keyword + " <value>'");
    std::vector<std::size_t> values;
    for (std::size_t i = 1; i < tokens.size(); ++i) values.push_back(parseCount(r, tokens[i], keyword));
    return values;
}

struct EntryLine {
    std::vector<std::size_t> index;  // 0-based
    CQuat value;
};

EntryLine parseEntry(const LineReader& r, const std::vector<std::string>& tokens, std::size_t arity,
                     const std::vector<std::size_t>& bounds) {
    if (tokens.size() != arity + 4) {
        r.fail("expected " + std::to_string(arity) + " indices and 4 reals, got " + std::to_string(tokens.size()) +
               " fields");
    }
    EntryLine e;
    e.index.resize(arity);
    for (std::size_t k = 0; k < arity; ++k) {
        const std::size_t i = parseCount(r, tokens[k], "index");
        if (i < 1 || i > bounds[k]) {
            r.fail("index " + std::to_string(i) + " out of range 1.." + std::to_string(bounds[k]));
        }
        e.index[k] = i - 1;
    }
    e.value = CQuat(parseReal(r, tokens[arity]), parseReal(r, tokens[arity + 1]), parseReal(r, tokens[arity + 2]),
                    parseReal(r, tokens[arity + 3]));
    return e;
}

void appendEntry(std::string& out, const std::vector<std::size_t>& index, const CQuat& q) {
    for (auto i : index) {
        out += std::to_string(i + 1);
        out += ' ';
    }
    out += formatReal(q.w);
    out += ' ';
    out += formatReal(q.x);
    out += ' ';
    out += formatReal(q.y);
    out += ' ';
    out += formatReal(q.z);
    out += '\n';
}

std::ifstream openOrThrow(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return in;
}

}  // namespace

CQTensor parseTensor(std::istream& in) {
    LineReader r(in);
    expectMagic(r, "CQT1");
    const auto order = expectKeyed(r, "order");
    if (order.size() != 1 || order[0] < 1) r.fail("order must be a single integer >= 1");
    const auto dims = expectKeyed(r, "dims");
    if (dims.size() != order[0]) r.fail("dims lists " + std::to_string(dims.size()) + " sizes for order " +
                                        std::to_string(order[0]));
    for (auto n : dims)
        if (n < 1) r.fail("dimensions must be >= 1");

    CQTensor t(dims);
    std::set<std::size_t> seen;
    std::vector<std::string> tokens;
    while (r.next(tokens)) {
        if (tokens.empty()) continue;
        EntryLine e = parseEntry(r, tokens, dims.size(), dims);
        const std::size_t lin = t.linearIndex(e.index);
        if (!seen.insert(lin).second) r.fail("duplicate entry index");
        t.at(lin) = e.value;
    }
    return t;
}

CQTensor readTensorFile(const std::filesystem::path& path) {
    auto in = openOrThrow(path);
    return parseTensor(in);
}

std::string serializeTensor(const CQTensor& t) {
    std::string out = "CQT1\norder " + std::to_string(t.order()) + "\ndims";
    for (auto n : t.dims()) out += ' ' + std::to_string(n);
    out += '\n';
    std::vector<std::size_t> idx(t.order());
    for (std::size_t lin = 0; lin < t.size(); ++lin) {
        if (t.at(lin) == CQuat{}) continue;
        t.multiIndex(lin, idx);
        appendEntry(out, idx, t.at(lin));
    }
    return out;
}

PolyProblem parsePoly(std::istream& in) {
    LineReader r(in);
    expectMagic(r, "CQP1");
    const auto degree = expectKeyed(r, "degree");
    if (degree.size() != 1 || degree[0] < 1) r.fail("degree must be a single integer >= 1");
    const auto dim = expectKeyed(r, "dim");
    if (dim.size() != 1 || dim[0] < 1) r.fail("dim must be a single integer >= 1");

    PolyProblem p(degree[0], dim[0]);
    const std::vector<std::size_t> bounds(degree[0], dim[0]);
    std::vector<std::string> tokens;
    while (r.next(tokens)) {
        if (tokens.empty()) continue;
        EntryLine e = parseEntry(r, tokens, degree[0], bounds);
        if (!std::is_sorted(e.index.begin(), e.index.end())) r.fail("index tuple is not sorted nondecreasing");
        p.add(std::move(e.index), e.value);
    }
    return p;
}

PolyProblem readPolyFile(const std::filesystem::path& path) {
    auto in = openOrThrow(path);
    return parsePoly(in);
}

std::string serializePoly(const PolyProblem& p) {
    std::string out = "CQP1\ndegree " + std::to_string(p.degree()) + "\ndim " + std::to_string(p.dim()) + '\n';
    for (const auto& [key, a] : p.coefficients()) {
        if (a == CQuat{}) continue;
        appendEntry(out, key, a);
    }
    return out;
}

}  // namespace cqopt
