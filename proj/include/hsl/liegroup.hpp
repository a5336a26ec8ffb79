#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hsl/octonion.hpp"
#include "hsl/quaternion.hpp"

namespace hsl {

struct LiftError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Affine groups G = Rot x| R^n acting on H or O, in the homogeneous
// (n+1)x(n+1) representation [[R, X], [0, 1]].
enum class GroupKind {
    Spin3H,  // {L_p} x| H
    SO4R4,   // SO(4) x| R^4
    U2C2,    // U(2) x| C^2 (commutant of L_i inside SO(4))
    U1C2,    // {L_{e^{i t}}} x| C^2
    Spin7O,  // Spin7 x| O
};

// The 4th-order automorphism tau(R, X) = (L_u R L_u^{-1}, -L_u X) linearized
// on the Lie algebra, realized as conjugation by M_u = diag(L_u, -1), with
// the spectral projectors P_k onto the eigenvalue i^k of the complexification.
// Convention: g_{-1}, g_0, g_1, g_2 carry eigenvalues -i, 1, i, -1.
struct TauAction {
    GroupKind kind;
    int n = 4;                          // ambient dimension (4 or 8)
    Eigen::MatrixXd Mu;                 // (n+1)x(n+1), orthogonal
    std::vector<Eigen::MatrixXd> basis; // orthonormal basis of g, homogeneous form

    int dim() const { return int(basis.size()); }

    Eigen::MatrixXd tau(const Eigen::MatrixXd& xi) const { return Mu * xi * Mu.transpose(); }
    Eigen::MatrixXcd tau_c(const Eigen::MatrixXcd& xi) const { return Mu * xi * Mu.transpose(); }

    // P_k = (1/4) sum_m i^{-km} tau^m, k taken mod 4.
    Eigen::MatrixXcd project(int k, const Eigen::MatrixXcd& xi) const;

    // complex dimension of the eigenspace g_k^C, k in {-1, 0, 1, 2}
    int complex_eigendim(int k) const;
};

// u must be a unit imaginary quaternion; only u = j is supported for the
// U(2)/U(1) kinds (their definition singles out the complex structure L_i).
TauAction build_tau(GroupKind kind, const Quaternion& u = Quaternion::j());
// The octonionic group Spin7 x| O; u a unit imaginary octonion.
TauAction build_tau_oct(const Octonion& u = Octonion::unit(1));

// homogeneous embedding helpers
Eigen::MatrixXd homogeneous(const Eigen::MatrixXd& rot, const Eigen::VectorXd& trans);
Eigen::MatrixXd homogeneous_algebra(const Eigen::MatrixXd& a, const Eigen::VectorXd& t);

}  // namespace hsl
