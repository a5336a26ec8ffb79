#pragma once

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "hsl/quaternion.hpp"

namespace hsl {

// Octonion built by Cayley-Dickson doubling of the quaternions:
//   (a, b)(c, d) = (a c - conj(d) b,  d a + b conj(c))
// with basis e0 = 1, e1 = i, e2 = j, e3 = k, e4 the doubling unit,
// e5 = i*e4-slot, e6 = j-slot, e7 = k-slot (i.e. e_{4+m} = (0, e_m)).
struct Octonion {
    std::array<double, 8> c{};

    Octonion() = default;
    explicit Octonion(const std::array<double, 8>& a) : c(a) {}
    Octonion(const Quaternion& a, const Quaternion& b)
        : c{a.w, a.x, a.y, a.z, b.w, b.x, b.y, b.z} {}

    static Octonion unit(int k) {
        Octonion o;
        o.c[k] = 1.0;
        return o;
    }
    static Octonion from_quaternion(const Quaternion& q) { return {q, Quaternion{}}; }
    static Octonion from_vec(const Eigen::Matrix<double, 8, 1>& v) {
        Octonion o;
        for (int k = 0; k < 8; ++k) o.c[k] = v[k];
        return o;
    }

    Quaternion lo() const { return {c[0], c[1], c[2], c[3]}; }
    Quaternion hi() const { return {c[4], c[5], c[6], c[7]}; }

    Eigen::Matrix<double, 8, 1> vec() const {
        Eigen::Matrix<double, 8, 1> v;
        for (int k = 0; k < 8; ++k) v[k] = c[k];
        return v;
    }

    double real() const { return c[0]; }
    Octonion conj() const {
        Octonion o = *this;
        for (int k = 1; k < 8; ++k) o.c[k] = -o.c[k];
        return o;
    }
    double norm2() const {
        double s = 0;
        for (double v : c) s += v * v;
        return s;
    }
    double norm() const { return std::sqrt(norm2()); }
    Octonion normalized() const;

    Octonion operator-() const {
        Octonion o = *this;
        for (double& v : o.c) v = -v;
        return o;
    }
};

inline Octonion operator+(const Octonion& a, const Octonion& b) {
    Octonion o;
    for (int k = 0; k < 8; ++k) o.c[k] = a.c[k] + b.c[k];
    return o;
}
inline Octonion operator-(const Octonion& a, const Octonion& b) {
    Octonion o;
    for (int k = 0; k < 8; ++k) o.c[k] = a.c[k] - b.c[k];
    return o;
}
inline Octonion operator*(double s, const Octonion& a) {
    Octonion o;
    for (int k = 0; k < 8; ++k) o.c[k] = s * a.c[k];
    return o;
}
inline Octonion operator/(const Octonion& a, double s) { return (1.0 / s) * a; }

inline Octonion operator*(const Octonion& x, const Octonion& y) {
    const Quaternion a = x.lo(), b = x.hi(), c = y.lo(), d = y.hi();
    return {a * c - d.conj() * b, d * a + b * c.conj()};
}

inline double dot(const Octonion& a, const Octonion& b) {
    double s = 0;
    for (int k = 0; k < 8; ++k) s += a.c[k] * b.c[k];
    return s;
}

inline Octonion Octonion::normalized() const { return (1.0 / norm()) * *this; }

// 8x8 matrix of x -> v*x.
Eigen::Matrix<double, 8, 8> left_mult_matrix(const Octonion& v);

}  // namespace hsl
