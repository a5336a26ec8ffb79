#pragma once

#include <vector>

#include <Eigen/Dense>

#include "hsl/octonion.hpp"
#include "hsl/algebra.hpp"

namespace hsl {

using Matrix8d = Eigen::Matrix<double, 8, 8>;

// Element of Spin7 < SO(8), stored as the 8x8 matrix of a product of
// left-multiplication operators L_{v_1} ... L_{v_r} with v_i in S^6.
// The factor list is provenance only.
struct Spin7Element {
    Matrix8d m = Matrix8d::Identity();
    std::vector<Octonion> factors;

    static Spin7Element identity() { return {}; }
    static Spin7Element from_factors(const std::vector<Octonion>& vs);
};

inline Spin7Element operator*(const Spin7Element& a, const Spin7Element& b) {
    Spin7Element r;
    r.m = a.m * b.m;
    r.factors = a.factors;
    r.factors.insert(r.factors.end(), b.factors.begin(), b.factors.end());
    return r;
}

// The 'Hopf' fibration Spin7 -> S^6: the unique w with p L_u p^{-1} = L_w.
// Throws AlgebraError when the conjugated matrix is not of left-multiplication
// form (input not in Spin7, or u not imaginary unit).
Octonion spin7_hopf(const Spin7Element& p, const Octonion& u, double tol = 1e-10);
Octonion spin7_hopf(const Matrix8d& p, const Octonion& u, double tol = 1e-10);

// A two-generator Spin7 element p = L_v L_u, v = (u + rho)/|u + rho|, with
// spin7_hopf(p, u) = rho. Throws AlgebraError for rho antipodal to u.
Spin7Element spin7_rotor_to(const Octonion& u, const Octonion& rho, double tol = 1e-10);

// Orthonormal (Frobenius) basis of the Lie algebra spin7 < so(8), built by
// closing span{L_v : v imaginary} under commutators. Cached; dimension 21.
const std::vector<Matrix8d>& spin7_lie_basis();

}  // namespace hsl
