#pragma once

#include <string>

namespace cqopt {

/// Commutative (Segre) quaternion w + x i + y j + z k.
///
/// Multiplication follows i^2 = k^2 = -1, j^2 = +1, ij = ji = k,
/// jk = kj = i, ki = ik = -j. The ring is commutative and associative but
/// has zero divisors, e.g. (1 + j)(1 - j) = 0, so no inverse is provided.
struct CQuat {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr CQuat() = default;
    constexpr CQuat(double re) : w(re) {}
    constexpr CQuat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    static constexpr CQuat i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr CQuat j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr CQuat k() { return {0.0, 0.0, 0.0, 1.0}; }

    constexpr CQuat& operator+=(const CQuat& o) {
        w += o.w;
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr CQuat& operator-=(const CQuat& o) {
        w -= o.w;
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr CQuat& operator*=(double s) {
        w *= s;
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
    constexpr CQuat& operator*=(const CQuat& o);

    constexpr bool operator==(const CQuat&) const = default;
};

constexpr CQuat mul(const CQuat& p, const CQuat& q) {
    return {p.w * q.w - p.x * q.x + p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z + p.z * q.y,
            p.w * q.y + p.y * q.w - p.x * q.z - p.z * q.x,
            p.w * q.z + p.z * q.w + p.x * q.y + p.y * q.x};
}

constexpr CQuat& CQuat::operator*=(const CQuat& o) { return *this = mul(*this, o); }

constexpr CQuat operator+(CQuat a, const CQuat& b) { return a += b; }
constexpr CQuat operator-(CQuat a, const CQuat& b) { return a -= b; }
constexpr CQuat operator-(const CQuat& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr CQuat operator*(const CQuat& a, const CQuat& b) { return mul(a, b); }
constexpr CQuat operator*(CQuat a, double s) { return a *= s; }
constexpr CQuat operator*(double s, CQuat a) { return a *= s; }
constexpr CQuat operator/(CQuat a, double s) { return a *= 1.0 / s; }

/// First-kind principal conjugate: w - x i + y j - z k.
constexpr CQuat conj(const CQuat& q) { return {q.w, -q.x, q.y, -q.z}; }

constexpr double re(const CQuat& q) { return q.w; }

/// Sum of squared components, equal to Re(q * conj(q)).
constexpr double norm2(const CQuat& q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }

/// |q|. Not multiplicative: |(1+j)(1-j)| = 0 while |1+j||1-j| = 2.
double magnitude(const CQuat& q);

bool isFinite(const CQuat& q);

/// Renders "a + b i + c j + d k" in fixed component order; negative
/// components fold the sign into the separator ("1 - 2 i + 0 j + 3 k").
std::string formatQuat(const CQuat& q);

/// Shortest round-trip decimal form of a double.
std::string formatReal(double v);

}  // namespace cqopt
