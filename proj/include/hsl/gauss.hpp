#pragma once

#include <stdexcept>

#include "hsl/algebra.hpp"
#include "hsl/catalog.hpp"
#include "hsl/grid.hpp"
#include "hsl/quaternion.hpp"

namespace hsl {

struct GaussError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Conformal immersion X : Omega -> H (or Im H embedded) with cached first
// derivatives. Derivatives come from closed forms when the source provides
// them, otherwise from central differences.
struct Immersion {
    Field<Quaternion> X;
    Field<Quaternion> Xx, Xy;
    Field<double> ew;  // conformal factor e^omega = |X_x|
    bool imaginary = false;  // values in Im H (real part ~ 0)

    static Immersion from_field(const Field<Quaternion>& X, double eps = 1e-8);
    static Immersion from_entry(const CatalogEntry& e, int n, double eps = 1e-8);
};

// Per-point frames and Gauss components of an immersion.
struct GaussData {
    Field<Quaternion> e1, e2;      // unit tangent frame (X_x, X_y normalized)
    Field<Quaternion> rho, sigma;  // e2 conj(e1), conj(e1) e2
    Field<double> ew;
    Field<double> w1, w2, w3;      // omega_i(e1, e2), omega_i = <L_i .,.>, <L_j .,.>, <L_k .,.>
    Field<double> beta;            // unwrapped angle in rho = e^{i beta} j
    bool lagrangian = false;       // sup |<rho, i>| below tolerance
    double lagrangian_sup = 0;     // sup |<rho, i>|
    double defining_residual = 0;  // sup |i dX/dz - rho dX/dz| / |dX/dz|
    double beta_max_jump = 0;      // largest neighbor step of unwrapped beta

    // beta is only meaningful on Lagrangian surfaces; throws otherwise.
    const Field<double>& beta_checked() const;
};

// sup over the evaluation region of
//   (| |X_x| - |X_y| | + |<X_x, X_y>|) / max(|X_x|, |X_y|)^2.
double conformality_residual(const Immersion& im, double eps = 1e-10);

GaussData gauss_data(const Immersion& im, double lag_tol = 1e-8, double conf_tol = 1e-6);

// max of sup |omega_1(X_x, X_y)| / e^{2 omega} and sup |<rho_X, i>|.
double lagrangian_residual(const Immersion& im);

struct MeanCurvature {
    Field<Quaternion> h;            // trace-II mean curvature vector (normal part)
    Field<Quaternion> j_grad_beta;  // e^{-2 omega}(beta_x L_i X_x + beta_y L_i X_y)
    double identity_residual = 0;   // sup |h - j_grad_beta|
};

MeanCurvature mean_curvature(const Immersion& im, double lag_tol = 1e-8);

struct HslResidual {
    double flat = 0;       // sup |Lap beta|
    double intrinsic = 0;  // sup |e^{-2 omega} Lap beta|
};

HslResidual hsl_residual(const Immersion& im, double lag_tol = 1e-8);
// Residual path on prescribed angle data, without an immersion.
double hsl_residual_from_beta(const Field<double>& beta);

struct SpecialLagrangianReport {
    bool special = false;
    double deviation = 0;  // max |beta - mean(beta)|
};

SpecialLagrangianReport special_lagrangian_check(const Immersion& im, double tol = 1e-6);

struct CmcReport {
    double rho_plus_sigma_sup = 0;  // sup |rho + sigma| (zero for Im H surfaces)
    double tension_sup = 0;         // sup |tension_sphere(rho)|
    double mean_h = 0;              // average scalar mean curvature <H, n>
    double mean_h_spread = 0;       // max deviation from the average
};

CmcReport cmc_check(const Immersion& im);

}  // namespace hsl
