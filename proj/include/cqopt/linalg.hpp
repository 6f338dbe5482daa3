#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "cqopt/cquat.hpp"

namespace cqopt {

/// Quaternion column vector in H^n.
class CQVector {
public:
    CQVector() = default;
    explicit CQVector(std::size_t n) : entries_(n) {}
    CQVector(std::initializer_list<CQuat> init) : entries_(init) {}
    explicit CQVector(std::vector<CQuat> entries) : entries_(std::move(entries)) {}

    static CQVector basis(std::size_t n, std::size_t k);

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

    CQuat& operator[](std::size_t i) { return entries_[i]; }
    const CQuat& operator[](std::size_t i) const { return entries_[i]; }

    auto begin() noexcept { return entries_.begin(); }
    auto end() noexcept { return entries_.end(); }
    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    std::span<const CQuat> entries() const noexcept { return entries_; }

    /// sqrt(sum |q_i|^2)
    double norm() const;
    CQVector normalized() const;

    CQVector& operator+=(const CQVector& o);
    CQVector& operator*=(double s);

    bool operator==(const CQVector&) const = default;

private:
    std::vector<CQuat> entries_;
};

CQVector operator+(CQVector a, const CQVector& b);
CQVector operator-(const CQVector& a);
CQVector operator*(double s, CQVector v);

/// Dense row-major quaternion matrix.
class CQMatrix {
public:
    CQMatrix() = default;
    CQMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
    CQMatrix(std::size_t rows, std::size_t cols, std::vector<CQuat> entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    CQuat& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const CQuat& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const CQuat> entries() const noexcept { return entries_; }

    bool operator==(const CQMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<CQuat> entries_;
};

CQMatrix transpose(const CQMatrix& a);
CQMatrix conjTranspose(const CQMatrix& a);

/// Dense order-d quaternion tensor, row-major (last index fastest).
class CQTensor {
public:
    CQTensor() = default;
    explicit CQTensor(std::vector<std::size_t> dims);
    CQTensor(std::vector<std::size_t> dims, std::vector<CQuat> entries);

    std::size_t order() const noexcept { return dims_.size(); }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    std::size_t dim(std::size_t slot) const { return dims_.at(slot); }
    std::size_t size() const noexcept { return entries_.size(); }

    std::size_t linearIndex(std::span<const std::size_t> index) const;
    /// Inverse of linearIndex; writes into out (length order()).
    void multiIndex(std::size_t linear, std::span<std::size_t> out) const;

    CQuat& operator()(std::span<const std::size_t> index) { return entries_[linearIndex(index)]; }
    const CQuat& operator()(std::span<const std::size_t> index) const {
        return entries_[linearIndex(index)];
    }
    CQuat& operator()(std::initializer_list<std::size_t> index) {
        return (*this)(std::span<const std::size_t>(index.begin(), index.size()));
    }
    const CQuat& operator()(std::initializer_list<std::size_t> index) const {
        return (*this)(std::span<const std::size_t>(index.begin(), index.size()));
    }

    CQuat& at(std::size_t linear) { return entries_[linear]; }
    const CQuat& at(std::size_t linear) const { return entries_[linear]; }
    std::span<const CQuat> entries() const noexcept { return entries_; }

    CQTensor& operator*=(double s);
    CQTensor& operator-=(const CQTensor& o);

    bool operator==(const CQTensor&) const = default;

private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> strides_;
    std::vector<CQuat> entries_;
};

CQTensor operator-(CQTensor a, const CQTensor& b);
CQTensor operator*(double s, CQTensor t);

/// Dense row-major real matrix. The real block embedding of a quaternion
/// matrix is stored in this form.
class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::vector<double> apply(std::span<const double> v) const;
    std::vector<double> applyTransposed(std::span<const double> u) const;
    /// u^T M v
    double bilinear(std::span<const double> u, std::span<const double> v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

using RealBlockMatrix = RealMatrix;

/// Dominant singular triple (value, left, right) of a real matrix.
struct SingularPair {
    double value = 0.0;
    std::vector<double> left;
    std::vector<double> right;
    std::size_t sweeps = 0;
};

/// Largest singular value and a unit singular pair with value = left^T M right.
///
/// One-sided (Hestenes) Jacobi orthogonalization: column pairs are rotated
/// until every pair satisfies |c_p . c_q| <= tol * |c_p| |c_q|. Among
/// equal-largest singular values the lowest column wins. The pair's sign is
/// fixed so the first nonzero component of `left` is positive. A zero
/// matrix yields value 0 with unit first basis vectors. Throws
/// ConvergenceError if maxSweeps sweeps do not converge.
SingularPair topSingularPair(const RealMatrix& m, double tol = 1e-12, std::size_t maxSweeps = 10000);

/// Re(q^H p) = q0.p0 + q1.p1 + q2.p2 + q3.p3
double innerProduct(const CQVector& q, const CQVector& p);

/// q^T p without conjugation.
CQuat dotT(const CQVector& q, const CQVector& p);

/// Re(x^T A y) evaluated in quaternion arithmetic.
double reBilinear(const CQVector& x, const CQMatrix& a, const CQVector& y);

/// 4m x 4n real matrix B with vecReal(x)^T B vecReal(y) = Re(x^T A y).
RealBlockMatrix realBlock(const CQMatrix& a);

/// Stacks (x0; x1; x2; x3), the four real component vectors.
std::vector<double> vecReal(const CQVector& x);
/// Inverse of vecReal; v.size() must be a multiple of 4.
CQVector unvecReal(std::span<const double> v);

CQTensor outerProduct(std::span<const CQVector> xs);

double tensorInner(const CQTensor& t, const CQTensor& k);
double tensorNorm(const CQTensor& t);

}  // namespace cqopt
