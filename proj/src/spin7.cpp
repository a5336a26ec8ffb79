#include "hsl/spin7.hpp"

#include <cmath>

namespace hsl {

Spin7Element Spin7Element::from_factors(const std::vector<Octonion>& vs) {
    Spin7Element p;
    for (const Octonion& v : vs) p.m = p.m * left_mult_matrix(v);
    p.factors = vs;
    return p;
}

Octonion spin7_hopf(const Matrix8d& p, const Octonion& u, double tol) {
    const Matrix8d c = p * left_mult_matrix(u) * p.transpose();
    // L_w(1) = w, so the candidate is the first column.
    const Octonion w = Octonion::from_vec(c.col(0));
    if ((left_mult_matrix(w) - c).norm() > tol)
        throw AlgebraError("spin7_hopf: conjugated matrix is not a left multiplication; input not in Spin7");
    return w;
}

Octonion spin7_hopf(const Spin7Element& p, const Octonion& u, double tol) {
    return spin7_hopf(p.m, u, tol);
}

Spin7Element spin7_rotor_to(const Octonion& u, const Octonion& rho, double tol) {
    const double c = dot(u, rho);
    if (c > 1 - 1e-14) return Spin7Element::identity();
    if (c < -1 + tol)
        throw AlgebraError("spin7_rotor_to: rho is antipodal to u");
    const Octonion v = (u + rho).normalized();
    // L_v L_u conjugates L_u to L_{v u v} ... = L_rho by the Moufang identity.
    return Spin7Element::from_factors({v, u});
}

namespace {

std::vector<Matrix8d> build_spin7_basis() {
    std::vector<Matrix8d> basis;
    auto add = [&basis](Matrix8d cand) {
        for (const Matrix8d& b : basis) cand -= (cand.array() * b.array()).sum() * b;
        const double n = cand.norm();
        if (n > 1e-8) {
            basis.push_back(cand / n);
            return true;
        }
        return false;
    };
    // Tangent vectors of generator-product curves through the identity are
    // L_a L_b with a, b orthogonal imaginary units (single L_v directions
    // belong to the complementary R^7 of so(8), not to spin7).
    for (int a = 1; a < 8; ++a)
        for (int b = a + 1; b < 8; ++b)
            add(left_mult_matrix(Octonion::unit(a)) * left_mult_matrix(Octonion::unit(b)));
    // closure sweep under commutators
    bool grew = true;
    while (grew) {
        grew = false;
        const size_t n = basis.size();
        for (size_t a = 0; a < n; ++a)
            for (size_t b = a + 1; b < n; ++b)
                if (add(basis[a] * basis[b] - basis[b] * basis[a])) grew = true;
    }
    return basis;
}

}  // namespace

const std::vector<Matrix8d>& spin7_lie_basis() {
    static const std::vector<Matrix8d> basis = build_spin7_basis();
    return basis;
}

}  // namespace hsl
