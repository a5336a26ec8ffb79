#include "hsl/algebra.hpp"

#include <cmath>

namespace hsl {

namespace {

Quaternion unit_quat(int k) {
    Quaternion q;
    (&q.w)[0] = 0;
    switch (k) {
        case 0: return Quaternion::one();
        case 1: return Quaternion::i();
        case 2: return Quaternion::j();
        default: return Quaternion::k();
    }
}

}  // namespace

Eigen::Matrix4d rotor_pair_to_matrix(const RotorPair& rp) {
    return left_mult_matrix(rp.p) * right_mult_matrix(rp.q.conj());
}

RotorPair matrix_to_rotor_pair(const Eigen::Matrix4d& m, double tol) {
    if ((m.transpose() * m - Eigen::Matrix4d::Identity()).norm() > tol)
        throw AlgebraError("matrix_to_rotor_pair: matrix is not orthogonal");
    if (m.determinant() < 0)
        throw AlgebraError("matrix_to_rotor_pair: determinant is -1, no rotor pair exists");

    // M = sum_{a,b} p_a q_b G_ab with G_ab(z) = e_a z conj(e_b); the G_ab are
    // Frobenius-orthogonal with |G_ab|^2 = 4, so C_ab = <M, G_ab>_F / 4 = p_a q_b.
    Eigen::Matrix4d C;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const Eigen::Matrix4d G =
                left_mult_matrix(unit_quat(a)) * right_mult_matrix(unit_quat(b).conj());
            C(a, b) = 0.25 * (m.array() * G.array()).sum();
        }
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(C, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (std::abs(svd.singularValues()[0] - 1.0) > tol || svd.singularValues()[1] > tol)
        throw AlgebraError("matrix_to_rotor_pair: matrix is not an SO(4) rotor product");
    Eigen::Vector4d pv = svd.matrixU().col(0);
    Eigen::Vector4d qv = svd.matrixV().col(0);
    for (int k = 0; k < 4; ++k) {
        if (std::abs(pv[k]) > 1e-12) {
            if (pv[k] < 0) { pv = -pv; qv = -qv; }
            break;
        }
    }
    return {Quaternion::from_vec(pv).normalized(), Quaternion::from_vec(qv).normalized()};
}

std::pair<Quaternion, Quaternion> stiefel_rho_sigma(const Quaternion& e1, const Quaternion& e2,
                                                    double tol) {
    if (std::abs(e1.norm() - 1) > tol || std::abs(e2.norm() - 1) > tol ||
        std::abs(dot(e1, e2)) > tol)
        throw AlgebraError("stiefel_rho_sigma: frame is not orthonormal");
    return {e2 * e1.conj(), e1.conj() * e2};
}

Octonion stiefel_rho(const Octonion& e1, const Octonion& e2, double tol) {
    if (std::abs(e1.norm() - 1) > tol || std::abs(e2.norm() - 1) > tol ||
        std::abs(dot(e1, e2)) > tol)
        throw AlgebraError("stiefel_rho: frame is not orthonormal");
    return e2 * e1.conj();
}

std::pair<Quaternion, Quaternion> plane_from_rho_sigma(const Quaternion& rho, const Quaternion& sigma,
                                                       double tol) {
    const Eigen::Matrix4d K = left_mult_matrix(rho) - right_mult_matrix(sigma);
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(K, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();  // descending
    if (sv[2] > tol || sv[1] < 0.1)
        throw AlgebraError("plane_from_rho_sigma: kernel of L_rho - R_sigma is not 2-dimensional");
    Quaternion e1 = Quaternion::from_vec(svd.matrixV().col(2)).normalized();
    Quaternion e2 = Quaternion::from_vec(svd.matrixV().col(3));
    e2 -= dot(e2, e1) * e1;
    e2 = e2.normalized();
    const Quaternion rho_out = e2 * e1.conj();
    if (dot(rho_out, rho) < 0) e2 = -e2;
    return {e1, e2};
}

Quaternion hopf_left(const Quaternion& p, const Quaternion& u) {
    return p * u * p.conj();
}

Quaternion rotor_to(const Quaternion& u, const Quaternion& rho, double tol) {
    const double c = dot(u, rho);
    if (c > 1 - 1e-14) return Quaternion::one();
    if (c < -1 + tol)
        throw AlgebraError(
            "rotor_to: rho is antipodal to u; the minimal rotor is not unique, supply a branch hint "
            "by choosing a different reference unit");
    // rotate about axis u x rho by the angle between them
    const Eigen::Vector3d axis = u.imag_vec().cross(rho.imag_vec()).normalized();
    const double angle = std::acos(std::clamp(c, -1.0, 1.0));
    const Quaternion n{0, axis[0], axis[1], axis[2]};
    return quat_exp(0.5 * angle * n);
}

}  // namespace hsl
