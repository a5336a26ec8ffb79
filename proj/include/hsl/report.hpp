#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hsl/catalog.hpp"

namespace hsl {

struct ReportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CheckResult {
    std::string name;
    double residual = 0;
    double tolerance = 0;
    std::optional<double> order;  // convergence slope, when measured
    bool exact = false;           // residuals at rounding level across grids
    bool pass = false;
};

struct Report {
    std::string subject;
    int nx = 0, ny = 0;
    double hx = 0, hy = 0;
    std::vector<CheckResult> checks;
    std::vector<std::complex<double>> lambda_samples;
    std::uint64_t seed = 0;

    int failures() const;
    nlohmann::ordered_json to_json() const;
    std::string dump() const { return to_json().dump(2) + "\n"; }
};

struct CheckOptions {
    int grid = 64;
    // residuals that must vanish identically (pointwise algebra)
    double algebraic_tol = 1e-10;
    // residuals carrying discretization error, judged loosely at one grid
    // (use the convergence driver for the honest order-based judgement)
    double discretization_tol = 5e-3;
    std::vector<std::complex<double>> lambdas{{0, 1}, {2, 0}};
    Quaternion u = Quaternion::j();
};

// one row of the --plot-data CSV: residual of the flatness family at one
// (lambda, grid spacing) pair
struct PlotPoint {
    std::complex<double> lambda;
    double h = 0;
    double residual = 0;
};

// Full single-grid pipeline on a catalog entry or grid file. The applicable
// checks depend on the subject: quaternion immersions run the conformality /
// Gauss-map / angle / lift / flatness chain, 3-component immersions the
// sphere-valued Gauss map checks, octonion immersions and frame-only rotor
// fields their lift flatness checks.
Report run_check(const std::string& subject, const CheckOptions& opt,
                 std::vector<PlotPoint>* plot = nullptr);

// Residuals across several grids reduced to convergence orders; a check
// passes if its order is >= 1.7 or its residuals sit at rounding level.
Report run_convergence(const std::string& subject, const std::vector<int>& grids,
                       const CheckOptions& opt, std::vector<PlotPoint>* plot = nullptr);

// Superspace identity suite with seeded randomness.
Report run_super(std::uint64_t seed, const std::string& mode);

std::string plot_csv(const std::vector<PlotPoint>& pts);

}  // namespace hsl
