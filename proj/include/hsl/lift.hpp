#pragma once

#include <array>
#include <complex>
#include <map>

#include "hsl/catalog.hpp"
#include "hsl/gauss.hpp"
#include "hsl/grid.hpp"
#include "hsl/liegroup.hpp"
#include "hsl/spin7.hpp"

namespace hsl {

// Lift F = (R, X) of an immersion together with its Maurer-Cartan form and
// (after decompose_alpha) the tau-eigenspace splitting of the dz / dzbar
// coefficients: az[k], azbar[k] hold P_k alpha(d/dz), P_k alpha(d/dzbar),
// indexed by k mod 4 (k = -1 stored at index 3).
struct LiftBundle {
    GroupKind kind;
    int n = 4;
    Field<Eigen::MatrixXd> F;          // homogeneous (n+1)x(n+1) group elements
    Connection<Eigen::MatrixXd> alpha; // F^{-1} dF by central differences
    std::array<Field<Eigen::MatrixXcd>, 4> az, azbar;
    bool decomposed = false;

    const Field<Eigen::MatrixXcd>& az_comp(int k) const { return az[((k % 4) + 4) % 4]; }
    const Field<Eigen::MatrixXcd>& azbar_comp(int k) const { return azbar[((k % 4) + 4) % 4]; }
};

// Octonionic immersion data (values and first derivatives in O).
struct OctImmersion {
    Field<Octonion> X, Xx, Xy;
    static OctImmersion from_entry(const CatalogEntry& e, int n);
};

// First lifting method: per-point R in SO(4) with R(1) = e1, R(u) = e2 and
// the orthogonal 2-plane completed continuously (row-major nearest-neighbor).
LiftBundle lift_frame(const Immersion& im, const Quaternion& u = Quaternion::j());

// U(2)-valued variant: columns (e1, i e1, e2, i e2); requires u = j and a
// Lagrangian immersion (otherwise the completion is not orthogonal).
LiftBundle lift_frame_unitary(const Immersion& im, double tol = 1e-6);

// sup-norm deviation of the unitary completion from orthogonality; zero iff
// the immersion is Lagrangian.
double u2_completion_residual(const Immersion& im);

// Second lifting method: R = L_p with p = rotor_to(u, rho_X), sign-continued
// row-major across the grid.
LiftBundle lift_hopf(const Immersion& im, const Quaternion& u = Quaternion::j());

// Octonionic second method: R = spin7_rotor_to(u, rho_X).
LiftBundle lift_hopf_oct(const OctImmersion& im, const Octonion& u = Octonion::unit(1));

// Frame-only bundle (no immersion): F = (L_p, 0) for a rotor field p.
LiftBundle rotor_bundle(const Field<Quaternion>& p);
LiftBundle rotor_bundle_entry(const CatalogEntry& e, int n);

// Arbitrary (R, X) bundle from explicit fields; used for non-lift controls.
LiftBundle bundle_from_fields(GroupKind kind, const Field<Eigen::MatrixXd>& rot,
                              const Field<Eigen::VectorXd>& trans);

// Apply the spectral projectors to alpha(d/dz), alpha(d/dzbar); verifies
// projector completeness (components re-sum to alpha) to 1e-12.
void decompose_alpha(LiftBundle& b, const TauAction& tau);

// sup |P_{-1} alpha(d/dzbar)| / sup |alpha|  (the (0,1)-part of alpha_{-1}).
double lift_condition_residual(const LiftBundle& b);

struct FlatnessResidual {
    double total = 0;                // sup curvature norm of alpha_lambda at lambda
    std::map<int, double> per_power; // Laurent coefficients of the curvature in lambda
    double laurent_sum = 0;          // sum of per-power sups over nonzero powers
};

// Curvature of the lambda-family; beta_family drops the odd (alpha_{-1},
// alpha_1) terms, giving the beta_{lambda^2} subfamily.
FlatnessResidual flatness_residual(const LiftBundle& b, std::complex<double> lambda,
                                   bool beta_family = false);

// sup-norm of LHS - RHS of the curvature identity
//   curv(alpha_lambda) = curv(beta_{lambda^2})
//     + (lambda^{-3}-lambda)[alpha_2' ^ alpha_{-1}'']
//     + (lambda^3-lambda^{-1})[alpha_2'' ^ alpha_1'],
// both sides evaluated independently.
double lemma2_identity_residual(const LiftBundle& b, std::complex<double> lambda);

struct HslReductionReport {
    double u1_residual = 0;   // sup |p - +-e^{i beta/2}| for the hopf lift
    double det_residual = 0;  // sup |det_C R - e^{i beta}| for the unitary frame lift
};

HslReductionReport hsl_reduction_check(const Immersion& im);

}  // namespace hsl
