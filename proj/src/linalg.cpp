#include "cqopt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cqopt/errors.hpp"

namespace cqopt {

namespace {

void requireSameLength(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                             std::to_string(b) + ")");
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double euclidean(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace

// ---------------------------------------------------------------- CQVector

CQVector CQVector::basis(std::size_t n, std::size_t k) {
    CQVector v(n);
    v[k] = CQuat(1.0);
    return v;
}

double CQVector::norm() const {
    double s = 0.0;
    for (const auto& q : entries_) s += norm2(q);
    return std::sqrt(s);
}

CQVector CQVector::normalized() const {
    CQVector out = *this;
    out *= 1.0 / norm();
    return out;
}

CQVector& CQVector::operator+=(const CQVector& o) {
    requireSameLength(size(), o.size(), "vector add");
    for (std::size_t i = 0; i < size(); ++i) entries_[i] += o.entries_[i];
    return *this;
}

CQVector& CQVector::operator*=(double s) {
    for (auto& q : entries_) q *= s;
    return *this;
}

CQVector operator+(CQVector a, const CQVector& b) { return a += b; }
CQVector operator-(const CQVector& a) { return -1.0 * a; }
CQVector operator*(double s, CQVector v) { return v *= s; }

// ---------------------------------------------------------------- CQMatrix

CQMatrix::CQMatrix(std::size_t rows, std::size_t cols, std::vector<CQuat> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) throw DimensionError("matrix: entry count does not match shape");
}

CQMatrix transpose(const CQMatrix& a) {
    CQMatrix t(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = a(r, c);
    return t;
}

CQMatrix conjTranspose(const CQMatrix& a) {
    CQMatrix t(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) t(c, r) = conj(a(r, c));
    return t;
}

// ---------------------------------------------------------------- CQTensor

CQTensor::CQTensor(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw DimensionError("tensor: order must be at least 1");
    strides_.assign(dims_.size(), 1);
    std::size_t total = 1;
    for (std::size_t k = dims_.size(); k-- > 0;) {
        if (dims_[k] == 0) throw DimensionError("tensor: zero-length dimension");
        strides_[k] = total;
        total *= dims_[k];
    }
    entries_.assign(total, CQuat{});
}

CQTensor::CQTensor(std::vector<std::size_t> dims, std::vector<CQuat> entries) : CQTensor(std::move(dims)) {
    if (entries.size() != entries_.size()) throw DimensionError("tensor: entry count does not match shape");
    entries_ = std::move(entries);
}

std::size_t CQTensor::linearIndex(std::span<const std::size_t> index) const {
    if (index.size() != dims_.size()) throw DimensionError("tensor: index arity does not match order");
    std::size_t lin = 0;
    for (std::size_t k = 0; k < index.size(); ++k) {
        if (index[k] >= dims_[k]) throw DimensionError("tensor: index out of range");
        lin += index[k] * strides_[k];
    }
    return lin;
}

void CQTensor::multiIndex(std::size_t linear, std::span<std::size_t> out) const {
    for (std::size_t k = 0; k < dims_.size(); ++k) {
        out[k] = linear / strides_[k];
        linear %= strides_[k];
    }
}

CQTensor& CQTensor::operator*=(double s) {
    for (auto& q : entries_) q *= s;
    return *this;
}

CQTensor& CQTensor::operator-=(const CQTensor& o) {
    if (dims_ != o.dims_) throw DimensionError("tensor subtract: shape mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
}

CQTensor operator-(CQTensor a, const CQTensor& b) { return a -= b; }
CQTensor operator*(double s, CQTensor t) { return t *= s; }

// ---------------------------------------------------------------- RealMatrix

std::vector<double> RealMatrix::apply(std::span<const double> v) const {
    requireSameLength(cols_, v.size(), "real matvec");
    std::vector<double> out(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        const double* row = entries_.data() + r * cols_;
        double s = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) s += row[c] * v[c];
        out[r] = s;
    }
    return out;
}

std::vector<double> RealMatrix::applyTransposed(std::span<const double> u) const {
    requireSameLength(rows_, u.size(), "real transposed matvec");
    std::vector<double> out(cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        const double* row = entries_.data() + r * cols_;
        for (std::size_t c = 0; c < cols_; ++c) out[c] += row[c] * u[r];
    }
    return out;
}

double RealMatrix::bilinear(std::span<const double> u, std::span<const double> v) const {
    return dot(u, apply(v));
}

SingularPair topSingularPair(const RealMatrix& m, double tol, std::size_t maxSweeps) {
    const bool transposed = m.rows() < m.cols();
    // Columns of the work matrix: columns of m, or of m^T when m is wide.
    const std::size_t len = transposed ? m.cols() : m.rows();
    const std::size_t ncols = transposed ? m.rows() : m.cols();

    std::vector<double> w(len * ncols);  // column-major
    for (std::size_t c = 0; c < ncols; ++c)
        for (std::size_t r = 0; r < len; ++r) w[c * len + r] = transposed ? m(c, r) : m(r, c);
    std::vector<double> v(ncols * ncols, 0.0);
    for (std::size_t c = 0; c < ncols; ++c) v[c * ncols + c] = 1.0;

    auto col = [&](std::vector<double>& store, std::size_t stride, std::size_t c) {
        return std::span<double>(store.data() + c * stride, stride);
    };

    // Columns below this squared norm are rounding debris of a rank deficiency.
    const double negligible = 1e-28 * std::max(dot(w, w), std::numeric_limits<double>::min());

    std::size_t sweep = 0;
    bool rotated = true;
    while (rotated) {
        if (sweep == maxSweeps) {
            throw ConvergenceError("topSingularPair: no convergence after " + std::to_string(maxSweeps) +
                                   " sweeps on a " + std::to_string(m.rows()) + "x" +
                                   std::to_string(m.cols()) + " matrix");
        }
        ++sweep;
        rotated = false;
        for (std::size_t p = 0; p + 1 < ncols; ++p) {
            for (std::size_t q = p + 1; q < ncols; ++q) {
                auto wp = col(w, len, p);
                auto wq = col(w, len, q);
                const double alpha = dot(wp, wp);
                const double beta = dot(wq, wq);
                const double gamma = dot(wp, wq);
                if (alpha <= negligible || beta <= negligible) continue;
                if (std::fabs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t r = 0; r < len; ++r) {
                    const double a = wp[r];
                    const double b = wq[r];
                    wp[r] = c * a - s * b;
                    wq[r] = s * a + c * b;
                }
                auto vp = col(v, ncols, p);
                auto vq = col(v, ncols, q);
                for (std::size_t r = 0; r < ncols; ++r) {
                    const double a = vp[r];
                    const double b = vq[r];
                    vp[r] = c * a - s * b;
                    vq[r] = s * a + c * b;
                }
            }
        }
    }

    std::size_t best = 0;
    double bestNorm = -1.0;
    for (std::size_t c = 0; c < ncols; ++c) {
        const double nrm = euclidean(col(w, len, c));
        if (nrm > bestNorm) {
            bestNorm = nrm;
            best = c;
        }
    }

    SingularPair out;
    out.sweeps = sweep;
    if (bestNorm <= 0.0) {
        out.left.assign(m.rows(), 0.0);
        out.right.assign(m.cols(), 0.0);
        out.left[0] = 1.0;
        out.right[0] = 1.0;
        return out;
    }

    std::vector<double> basisVec(col(v, ncols, best).begin(), col(v, ncols, best).end());
    const double bn = euclidean(basisVec);
    for (auto& e : basisVec) e /= bn;

    std::vector<double> other = transposed ? m.applyTransposed(basisVec) : m.apply(basisVec);
    const double sigma = euclidean(other);
    for (auto& e : other) e /= sigma;

    if (transposed) {
        out.left = std::move(basisVec);
        out.right = std::move(other);
    } else {
        out.left = std::move(other);
        out.right = std::move(basisVec);
    }
    out.value = m.bilinear(out.left, out.right);

    auto firstNonzero = std::find_if(out.left.begin(), out.left.end(), [](double e) { return e != 0.0; });
    if (firstNonzero != out.left.end() && *firstNonzero < 0.0) {
        for (auto& e : out.left) e = -e;
        for (auto& e : out.right) e = -e;
    }
    return out;
}

// ---------------------------------------------------------------- products

double innerProduct(const CQVector& q, const CQVector& p) {
    requireSameLength(q.size(), p.size(), "innerProduct");
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
        s += q[i].w * p[i].w + q[i].x * p[i].x + q[i].y * p[i].y + q[i].z * p[i].z;
    return s;
}

CQuat dotT(const CQVector& q, const CQVector& p) {
    requireSameLength(q.size(), p.size(), "dotT");
    CQuat s;
    for (std::size_t i = 0; i < q.size(); ++i) s += q[i] * p[i];
    return s;
}

double reBilinear(const CQVector& x, const CQMatrix& a, const CQVector& y) {
    requireSameLength(x.size(), a.rows(), "reBilinear rows");
    requireSameLength(y.size(), a.cols(), "reBilinear cols");
    CQuat s;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        CQuat row;
        for (std::size_t c = 0; c < a.cols(); ++c) row += a(r, c) * y[c];
        s += x[r] * row;
    }
    return re(s);
}

RealBlockMatrix realBlock(const CQMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    RealMatrix b(4 * m, 4 * n);
    // Block (I, J) holds sign * A_k; rows index (x0..x3), columns (y0..y3).
    struct Cell {
        int comp;
        double sign;
    };
    static constexpr Cell pattern[4][4] = {
        {{0, 1.0}, {1, -1.0}, {2, 1.0}, {3, -1.0}},
        {{1, -1.0}, {0, -1.0}, {3, -1.0}, {2, -1.0}},
        {{2, 1.0}, {3, -1.0}, {0, 1.0}, {1, -1.0}},
        {{3, -1.0}, {2, -1.0}, {1, -1.0}, {0, -1.0}},
    };
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const CQuat& q = a(r, c);
            const double comps[4] = {q.w, q.x, q.y, q.z};
            for (std::size_t bi = 0; bi < 4; ++bi)
                for (std::size_t bj = 0; bj < 4; ++bj) {
                    const Cell& cell = pattern[bi][bj];
                    b(bi * m + r, bj * n + c) = cell.sign * comps[cell.comp];
                }
        }
    }
    return b;
}

std::vector<double> vecReal(const CQVector& x) {
    const std::size_t n = x.size();
    std::vector<double> out(4 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = x[i].w;
        out[n + i] = x[i].x;
        out[2 * n + i] = x[i].y;
        out[3 * n + i] = x[i].z;
    }
    return out;
}

CQVector unvecReal(std::span<const double> v) {
    if (v.size() % 4 != 0) throw DimensionError("unvecReal: length is not a multiple of 4");
    const std::size_t n = v.size() / 4;
    CQVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = CQuat(v[i], v[n + i], v[2 * n + i], v[3 * n + i]);
    return x;
}

CQTensor outerProduct(std::span<const CQVector> xs) {
    if (xs.empty()) throw DimensionError("outerProduct: need at least one vector");
    std::vector<std::size_t> dims;
    for (const auto& x : xs) dims.push_back(x.size());
    CQTensor t(dims);
    std::vector<std::size_t> idx(dims.size());
    for (std::size_t lin = 0; lin < t.size(); ++lin) {
        t.multiIndex(lin, idx);
        CQuat prod(1.0);
        for (std::size_t k = 0; k < xs.size(); ++k) prod *= xs[k][idx[k]];
        t.at(lin) = prod;
    }
    return t;
}

double tensorInner(const CQTensor& t, const CQTensor& k) {
    if (t.dims() != k.dims()) throw DimensionError("tensorInner: shape mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const CQuat& a = t.at(i);
        const CQuat& b = k.at(i);
        s += a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
    }
    return s;
}

double tensorNorm(const CQTensor& t) { return std::sqrt(tensorInner(t, t)); }

}  // namespace cqopt
