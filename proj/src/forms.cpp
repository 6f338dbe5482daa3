#include "cqopt/forms.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "cqopt/errors.hpp"

namespace cqopt {

namespace {

void checkSlotVectors(const std::vector<std::size_t>& dims, std::span<const CQVector> xs) {
    if (xs.size() != dims.size()) {
        throw DimensionError("form: expected " + std::to_string(dims.size()) + " vectors, got " +
                             std::to_string(xs.size()));
    }
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (xs[k].size() != dims[k]) {
            throw DimensionError("form: slot " + std::to_string(k + 1) + " expects length " +
                                 std::to_string(dims[k]) + ", got " + std::to_string(xs[k].size()));
        }
    }
}

double factorial(std::size_t d) {
    double f = 1.0;
    for (std::size_t i = 2; i <= d; ++i) f *= static_cast<double>(i);
    return f;
}

}  // namespace

PolyProblem::PolyProblem(std::size_t degree, std::size_t dim) : degree_(degree), dim_(dim) {
    if (degree_ == 0) throw PreconditionError("polynomial degree must be at least 1");
    if (dim_ == 0) throw PreconditionError("polynomial dimension must be at least 1");
}

void PolyProblem::add(Key indices, const CQuat& a) {
    if (indices.size() != degree_) {
        throw DimensionError("polynomial term has " + std::to_string(indices.size()) + " indices, degree is " +
                             std::to_string(degree_));
    }
    for (auto i : indices)
        if (i >= dim_) throw DimensionError("polynomial index " + std::to_string(i + 1) + " exceeds dim");
    std::sort(indices.begin(), indices.end());
    coeffs_[std::move(indices)] += a;
}

PolyProblem PolyProblem::negated() const {
    PolyProblem out(degree_, dim_);
    for (const auto& [key, a] : coeffs_) out.coeffs_[key] = -a;
    return out;
}

CQuat evalForm(const MultilinearForm& f, std::span<const CQVector> xs) {
    const CQTensor& t = f.tensor();
    checkSlotVectors(t.dims(), xs);
    const std::size_t d = t.order();
    std::vector<std::size_t> idx(d);
    CQuat sum;
    for (std::size_t lin = 0; lin < t.size(); ++lin) {
        const CQuat& a = t.at(lin);
        if (a == CQuat{}) continue;
        t.multiIndex(lin, idx);
        CQuat term = a;
        for (std::size_t k = 0; k < d; ++k) term *= xs[k][idx[k]];
        sum += term;
    }
    return sum;
}

CQuat evalDiagonal(const MultilinearForm& f, const CQVector& x) {
    std::vector<CQVector> xs(f.order(), x);
    return evalForm(f, xs);
}

CQTensor contractSlot(const CQTensor& t, std::size_t slot, const CQVector& v) {
    if (t.order() < 2) throw DimensionError("contractSlot: tensor order must be at least 2");
    if (slot >= t.order()) throw DimensionError("contractSlot: slot out of range");
    if (v.size() != t.dim(slot)) throw DimensionError("contractSlot: vector length does not match slot");

    std::vector<std::size_t> outDims;
    for (std::size_t k = 0; k < t.order(); ++k)
        if (k != slot) outDims.push_back(t.dim(k));
    CQTensor out(outDims);

    // Row-major layout: index = (outer, i_slot, inner) with inner the
    // product of trailing dims.
    std::size_t inner = 1;
    for (std::size_t k = slot + 1; k < t.order(); ++k) inner *= t.dim(k);
    const std::size_t n = t.dim(slot);
    const std::size_t outer = t.size() / (n * inner);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t i = 0; i < n; ++i) {
            const CQuat& vi = v[i];
            const std::size_t base = (o * n + i) * inner;
            for (std::size_t r = 0; r < inner; ++r) out.at(o * inner + r) += t.at(base + r) * vi;
        }
    }
    return out;
}

CQVector contract(const MultilinearForm& f, std::span<const CQVector> fixed, std::size_t freeSlot) {
    const std::size_t d = f.order();
    if (freeSlot >= d) throw DimensionError("contract: free slot out of range");
    if (fixed.size() + 1 != d) throw DimensionError("contract: expected d - 1 fixed vectors");
    if (d == 1) return CQVector(std::vector<CQuat>(f.tensor().entries().begin(), f.tensor().entries().end()));

    // Contract from the highest slot down so lower slot numbers stay valid.
    CQTensor t = f.tensor();
    std::size_t fixedPos = fixed.size();
    for (std::size_t k = d; k-- > 0;) {
        if (k == freeSlot) continue;
        t = contractSlot(t, k, fixed[--fixedPos]);
    }
    return CQVector(std::vector<CQuat>(t.entries().begin(), t.entries().end()));
}

CQMatrix contractToMatrix(const MultilinearForm& f, std::span<const CQVector> fixed, std::size_t rowSlot,
                          std::size_t colSlot) {
    const std::size_t d = f.order();
    if (d < 2) throw DimensionError("contractToMatrix: order must be at least 2");
    if (rowSlot >= d || colSlot >= d || rowSlot == colSlot)
        throw DimensionError("contractToMatrix: invalid free slots");
    if (fixed.size() + 2 != d) throw DimensionError("contractToMatrix: expected d - 2 fixed vectors");

    CQTensor t = f.tensor();
    std::size_t fixedPos = fixed.size();
    for (std::size_t k = d; k-- > 0;) {
        if (k == rowSlot || k == colSlot) continue;
        t = contractSlot(t, k, fixed[--fixedPos]);
    }
    const std::size_t lo = std::min(rowSlot, colSlot);
    const std::size_t hi = std::max(rowSlot, colSlot);
    CQMatrix m(f.dims()[lo], f.dims()[hi], std::vector<CQuat>(t.entries().begin(), t.entries().end()));
    return rowSlot < colSlot ? m : transpose(m);
}

MultilinearForm symmetrize(const PolyProblem& p) {
    const std::size_t d = p.degree();
    const std::size_t n = p.dim();
    CQTensor t(std::vector<std::size_t>(d, n));
    std::vector<std::size_t> perm;
    std::vector<std::size_t> cells;
    for (const auto& [key, a] : p.coefficients()) {
        perm = key;
        cells.clear();
        // next_permutation from the sorted tuple visits each distinct
        // arrangement exactly once.
        do {
            cells.push_back(t.linearIndex(perm));
        } while (std::next_permutation(perm.begin(), perm.end()));
        const CQuat share = a / static_cast<double>(cells.size());
        for (auto lin : cells) t.at(lin) = share;
    }
    return MultilinearForm(std::move(t));
}

bool isSuperSymmetric(const CQTensor& t, double tol) {
    const std::size_t d = t.order();
    for (std::size_t k = 1; k < d; ++k)
        if (t.dim(k) != t.dim(0)) return false;
    double scale = 0.0;
    for (const auto& q : t.entries()) scale = std::max(scale, magnitude(q));
    const double bound = tol * std::max(scale, 1.0);
    std::vector<std::size_t> idx(d);
    // Adjacent transpositions generate the symmetric group.
    for (std::size_t lin = 0; lin < t.size(); ++lin) {
        t.multiIndex(lin, idx);
        for (std::size_t k = 0; k + 1 < d; ++k) {
            if (idx[k] == idx[k + 1]) continue;
            std::swap(idx[k], idx[k + 1]);
            const bool same = magnitude(t(idx) - t.at(lin)) <= bound;
            std::swap(idx[k], idx[k + 1]);
            if (!same) return false;
        }
    }
    return true;
}

CQuat evalPoly(const PolyProblem& p, const CQVector& x) {
    if (x.size() != p.dim()) throw DimensionError("evalPoly: vector length does not match dim");
    CQuat sum;
    for (const auto& [key, a] : p.coefficients()) {
        CQuat term = a;
        for (auto i : key) term *= x[i];
        sum += term;
    }
    return sum;
}

LinkageResult linkageCheck(const MultilinearForm& f, std::span<const CQVector> xs) {
    const std::size_t d = f.order();
    if (d > 20) throw PreconditionError("linkageCheck: degree above 20 is not enumerated");
    checkSlotVectors(f.dims(), xs);
    if (!isSuperSymmetric(f.tensor())) throw PreconditionError("linkageCheck: form is not super-symmetric");

    const std::size_t n = f.dims()[0];
    const std::size_t patterns = std::size_t{1} << d;
    CQuat total;
    for (std::size_t mask = 0; mask < patterns; ++mask) {
        CQVector y(n);
        double signProduct = 1.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double s = (mask >> k) & 1U ? -1.0 : 1.0;
            signProduct *= s;
            for (std::size_t i = 0; i < n; ++i) y[i] += s * xs[k][i];
        }
        total += signProduct * evalDiagonal(f, y);
    }
    return {total / static_cast<double>(patterns), factorial(d) * evalForm(f, xs)};
}

PolyProblem liftToPoly(const MultilinearForm& f) {
    const auto& dims = f.dims();
    std::vector<std::size_t> offsets(dims.size(), 0);
    std::size_t total = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        offsets[k] = total;
        total += dims[k];
    }
    PolyProblem p(f.order(), total);
    const CQTensor& t = f.tensor();
    std::vector<std::size_t> idx(t.order());
    for (std::size_t lin = 0; lin < t.size(); ++lin) {
        const CQuat& a = t.at(lin);
        if (a == CQuat{}) continue;
        t.multiIndex(lin, idx);
        PolyProblem::Key key(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) key[k] = offsets[k] + idx[k];
        p.add(std::move(key), a);
    }
    return p;
}

std::vector<CQVector> splitBlocks(const CQVector& stacked, std::span<const std::size_t> sizes) {
    std::size_t total = 0;
    for (auto s : sizes) total += s;
    if (total != stacked.size()) throw DimensionError("splitBlocks: block sizes do not sum to vector length");
    std::vector<CQVector> blocks;
    std::size_t pos = 0;
    for (auto s : sizes) {
        CQVector b(s);
        for (std::size_t i = 0; i < s; ++i) b[i] = stacked[pos + i];
        pos += s;
        blocks.push_back(std::move(b));
    }
    return blocks;
}

}  // namespace cqopt
