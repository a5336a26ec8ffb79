#pragma once

#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

#include "hsl/quaternion.hpp"
#include "hsl/octonion.hpp"

namespace hsl {

// R(z) = p z conj(q), a rotation of R^4 = H. The pair is defined up to
// simultaneous sign flip.
struct RotorPair {
    Quaternion p, q;
};

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Eigen::Matrix4d rotor_pair_to_matrix(const RotorPair& rp);

// Inverse of rotor_pair_to_matrix. Canonical representative: first nonzero
// component of p is positive. Throws AlgebraError if m is not special
// orthogonal.
RotorPair matrix_to_rotor_pair(const Eigen::Matrix4d& m, double tol = 1e-8);

// Stiefel -> S^2 x S^2 maps: rho = e2 * conj(e1), sigma = conj(e1) * e2.
// Inputs must be unit and mutually orthogonal.
std::pair<Quaternion, Quaternion> stiefel_rho_sigma(const Quaternion& e1, const Quaternion& e2,
                                                    double tol = 1e-6);

// Octonion variant; only rho is defined.
Octonion stiefel_rho(const Octonion& e1, const Octonion& e2, double tol = 1e-6);

// Inverse of the Grassmannian identification: recovers an oriented
// orthonormal pair spanning the plane with invariants (rho, sigma).
// The span is the 2-dimensional kernel of L_rho - R_sigma on R^4.
std::pair<Quaternion, Quaternion> plane_from_rho_sigma(const Quaternion& rho, const Quaternion& sigma,
                                                       double tol = 1e-8);

// Left Hopf fibration: p -> p u conj(p) for a unit quaternion p.
Quaternion hopf_left(const Quaternion& p, const Quaternion& u);

// Minimal-rotation unit quaternion p with p u conj(p) = rho, for unit
// imaginary u, rho. Throws AlgebraError for antipodal input (rho = -u).
Quaternion rotor_to(const Quaternion& u, const Quaternion& rho, double tol = 1e-10);

}  // namespace hsl
