#include "hsl/quaternion.hpp"

#include <ostream>

namespace hsl {

Quaternion quat_exp(const Quaternion& v) {
    const double a = v.w;
    const double t = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    const double c = std::cos(t);
    const double s = t > 1e-300 ? std::sin(t) / t : 1.0;
    return std::exp(a) * Quaternion{c, s * v.x, s * v.y, s * v.z};
}

Eigen::Matrix4d left_mult_matrix(const Quaternion& q) {
    Eigen::Matrix4d m;
    // columns are q*1, q*i, q*j, q*k
    m << q.w, -q.x, -q.y, -q.z,
         q.x,  q.w, -q.z,  q.y,
         q.y,  q.z,  q.w, -q.x,
         q.z, -q.y,  q.x,  q.w;
    return m;
}

Eigen::Matrix4d right_mult_matrix(const Quaternion& q) {
    Eigen::Matrix4d m;
    // columns are 1*q, i*q, j*q, k*q
    m << q.w, -q.x, -q.y, -q.z,
         q.x,  q.w,  q.z, -q.y,
         q.y, -q.z,  q.w,  q.x,
         q.z,  q.y, -q.x,  q.w;
    return m;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << "(" << q.w << " + " << q.x << "i + " << q.y << "j + " << q.z << "k)";
}

}  // namespace hsl
