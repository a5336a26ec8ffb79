#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>

#include <Eigen/Dense>

namespace hsl {

// Quaternion over the basis (1, i, j, k), identified with R^4.
struct Quaternion {
    double w = 0, x = 0, y = 0, z = 0;

    Quaternion() = default;
    Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    static Quaternion one() { return {1, 0, 0, 0}; }
    static Quaternion i() { return {0, 1, 0, 0}; }
    static Quaternion j() { return {0, 0, 1, 0}; }
    static Quaternion k() { return {0, 0, 0, 1}; }

    // z1 + z2*j with z1, z2 in C = span{1, i}.
    static Quaternion from_c2(std::complex<double> z1, std::complex<double> z2) {
        return {z1.real(), z1.imag(), z2.real(), z2.imag()};
    }
    std::complex<double> c1() const { return {w, x}; }
    std::complex<double> c2() const { return {y, z}; }

    static Quaternion from_vec(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }
    Eigen::Vector4d vec() const { return {w, x, y, z}; }
    Eigen::Vector3d imag_vec() const { return {x, y, z}; }

    Quaternion conj() const { return {w, -x, -y, -z}; }
    double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    Quaternion inverse() const {
        const double n2 = norm2();
        return {w / n2, -x / n2, -y / n2, -z / n2};
    }
    Quaternion normalized() const;

    Quaternion operator-() const { return {-w, -x, -y, -z}; }
    Quaternion& operator+=(const Quaternion& o) {
        w += o.w; x += o.x; y += o.y; z += o.z;
        return *this;
    }
    Quaternion& operator-=(const Quaternion& o) {
        w -= o.w; x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }
};

inline Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
inline Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
inline Quaternion operator*(double s, const Quaternion& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }
inline Quaternion operator*(const Quaternion& q, double s) { return s * q; }
inline Quaternion operator/(const Quaternion& q, double s) { return (1.0 / s) * q; }

inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline double dot(const Quaternion& a, const Quaternion& b) {
    return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Quaternion Quaternion::normalized() const { return *this / norm(); }

// exp(theta * n) for a unit imaginary n.
Quaternion quat_exp(const Quaternion& v);

// 4x4 matrix of z -> q*z (left multiplication).
Eigen::Matrix4d left_mult_matrix(const Quaternion& q);
// 4x4 matrix of z -> z*q (right multiplication).
Eigen::Matrix4d right_mult_matrix(const Quaternion& q);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace hsl
