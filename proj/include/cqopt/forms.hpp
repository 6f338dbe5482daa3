#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "cqopt/cquat.hpp"
#include "cqopt/linalg.hpp"

namespace cqopt {

/// F(x^1, ..., x^d) = sum F_{i1..id} x^1_{i1} ... x^d_{id} over an order-d tensor.
class MultilinearForm {
public:
    MultilinearForm() = default;
    explicit MultilinearForm(CQTensor tensor) : tensor_(std::move(tensor)) {}

    const CQTensor& tensor() const noexcept { return tensor_; }
    std::size_t order() const noexcept { return tensor_.order(); }
    const std::vector<std::size_t>& dims() const noexcept { return tensor_.dims(); }

private:
    CQTensor tensor_;
};

/// Homogeneous polynomial H(x) = sum a_{i1..id} x_{i1} ... x_{id} over sorted
/// index tuples i1 <= ... <= id. Indices are 0-based.
class PolyProblem {
public:
    using Key = std::vector<std::size_t>;

    PolyProblem(std::size_t degree, std::size_t dim);

    /// Sorts the tuple and adds a to its coefficient.
    void add(Key indices, const CQuat& a);

    std::size_t degree() const noexcept { return degree_; }
    std::size_t dim() const noexcept { return dim_; }
    const std::map<Key, CQuat>& coefficients() const noexcept { return coeffs_; }

    PolyProblem negated() const;

private:
    std::size_t degree_;
    std::size_t dim_;
    std::map<Key, CQuat> coeffs_;
};

CQuat evalForm(const MultilinearForm& f, std::span<const CQVector> xs);

/// F(x, x, ..., x); the homogeneous polynomial of a super-symmetric form.
CQuat evalDiagonal(const MultilinearForm& f, const CQVector& x);

/// Contracts one slot of t against v; the result has order d - 1 (d >= 2).
CQTensor contractSlot(const CQTensor& t, std::size_t slot, const CQVector& v);

/// The vector F(x^1, .., *, .., x^d) with v^T y = F(.., y, ..) for all y.
/// `fixed` lists the d - 1 vectors of the remaining slots in slot order.
CQVector contract(const MultilinearForm& f, std::span<const CQVector> fixed, std::size_t freeSlot);

/// Contracts every slot except rowSlot and colSlot; `fixed` lists the d - 2
/// vectors of the contracted slots in slot order. Rows follow rowSlot.
CQMatrix contractToMatrix(const MultilinearForm& f, std::span<const CQVector> fixed, std::size_t rowSlot,
                          std::size_t colSlot);

/// Super-symmetric tensor of P: each permutation of a sorted tuple carries
/// a / (number of distinct permutations of the tuple).
MultilinearForm symmetrize(const PolyProblem& p);

bool isSuperSymmetric(const CQTensor& t, double tol = 1e-12);

/// Direct monomial evaluation.
CQuat evalPoly(const PolyProblem& p, const CQVector& x);

struct LinkageResult {
    CQuat lhs;  ///< E[prod xi_i * H(sum xi_k x^k)] over all 2^d sign vectors
    CQuat rhs;  ///< d! F(x^1, ..., x^d)
};

/// Exact sign-average identity for super-symmetric forms. Rejects d > 20.
LinkageResult linkageCheck(const MultilinearForm& f, std::span<const CQVector> xs);

/// Polynomial in the stacked variable (x^1; ...; x^d) of dimension sum n_k
/// whose value equals F on the blocks.
PolyProblem liftToPoly(const MultilinearForm& f);

/// Splits a stacked vector into blocks of the given sizes.
std::vector<CQVector> splitBlocks(const CQVector& stacked, std::span<const std::size_t> sizes);

}  // namespace cqopt
