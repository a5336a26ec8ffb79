#include "doctest.h"

#include <cstdio>

#include "hsl/report.hpp"

using namespace hsl;
using cplx = std::complex<double>;

namespace {

const CheckResult* find(const Report& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

}  // namespace

TEST_CASE("full pipeline passes on an HSL surface") {
    CheckOptions opt;
    opt.grid = 48;
    const Report rep = run_check("clifford_torus", opt);
    CHECK(rep.failures() == 0);
    CHECK(rep.nx == 48);
    CHECK(rep.hx > 0);
    for (const char* name :
         {"conformality", "lagrangian", "angle_harmonicity", "mean_curvature_identity",
          "lift_condition_hopf", "lift_condition_frame", "flatness(i)", "flatness(2)",
          "flatness_laurent", "family_curvature_identity"})
        CHECK_MESSAGE(find(rep, name) != nullptr, name);
    // deterministic assembly: sorted by check name
    for (size_t i = 1; i < rep.checks.size(); ++i)
        CHECK(rep.checks[i - 1].name < rep.checks[i].name);
}

TEST_CASE("non-Lagrangian control fails only the Lagrangian check") {
    CheckOptions opt;
    opt.grid = 32;
    const Report rep = run_check("complex_line", opt);
    CHECK(rep.failures() == 1);
    const CheckResult* lag = find(rep, "lagrangian");
    REQUIRE(lag != nullptr);
    CHECK_FALSE(lag->pass);
    CHECK(lag->residual == doctest::Approx(1.0).epsilon(1e-10));
    // the Gauss map is constant, so the flatness family still passes
    CHECK(find(rep, "flatness(i)")->pass);
    CHECK(find(rep, "flatness(2)")->pass);
}

TEST_CASE("non-harmonic rotor fails flatness through the Laurent split") {
    CheckOptions opt;
    opt.grid = 33;
    opt.lambdas = {cplx(0, 1)};
    const Report rep = run_check("nonharmonic_rotor", opt);
    // at lambda = i the nonzero Laurent coefficients cancel pointwise, so the
    // total curvature alone would miss the failure
    CHECK(find(rep, "flatness(i)")->pass);
    const CheckResult* laurent = find(rep, "flatness_laurent");
    REQUIRE(laurent != nullptr);
    CHECK_FALSE(laurent->pass);
    CHECK(laurent->residual == doctest::Approx(4.0).epsilon(0.2));
    CHECK(rep.failures() >= 1);
}

TEST_CASE("sphere-valued Gauss map checks") {
    CheckOptions opt;
    opt.grid = 48;
    CHECK(run_check("round_sphere", opt).failures() == 0);
    CHECK(run_check("cmc_cylinder", opt).failures() == 0);

    const Report torus = run_check("torus_of_revolution", opt);
    const CheckResult* tension = find(torus, "gauss_tension");
    REQUIRE(tension != nullptr);
    CHECK_FALSE(tension->pass);
    CHECK(tension->residual > 0.05);
}

TEST_CASE("octonionic pipeline") {
    CheckOptions opt;
    opt.grid = 32;
    const Report rep = run_check("octonion_clifford", opt);
    CHECK(rep.failures() == 0);
    CHECK(find(rep, "lift_condition") != nullptr);
    CHECK(find(rep, "flatness(i)") != nullptr);
}

TEST_CASE("grid-file subjects run the sampled-data pipeline") {
    const CatalogEntry e = builtin("clifford_torus");
    const auto f = sample_entry(e, 48);
    const std::string path = "report_roundtrip_grid.json";
    save_grid(path, f, e.dim, e.name);
    CheckOptions opt;
    const Report rep = run_check(path, opt);
    std::remove(path.c_str());
    CHECK(rep.failures() == 0);
    // sampled data carries O(h^2) Gauss-map error: judged at grid level
    CHECK(find(rep, "lagrangian")->tolerance == opt.discretization_tol);
}

TEST_CASE("convergence report: orders and exactness flags") {
    CheckOptions opt;
    const Report rep = run_convergence("clifford_torus", {16, 32, 64}, opt);
    const CheckResult* mc = find(rep, "mean_curvature_identity");
    REQUIRE(mc != nullptr);
    REQUIRE(mc->order.has_value());
    CHECK(*mc->order == doctest::Approx(2.0).epsilon(0.15));
    CHECK(mc->pass);
    const CheckResult* hsl_c = find(rep, "angle_harmonicity");
    REQUIRE(hsl_c != nullptr);
    CHECK(hsl_c->exact);
    CHECK(hsl_c->pass);
    CHECK(rep.failures() == 0);

    // bounded-below residual is flagged non-convergent
    const Report torus = run_convergence("torus_of_revolution", {24, 48}, opt);
    const CheckResult* tension = find(torus, "gauss_tension");
    REQUIRE(tension != nullptr);
    CHECK_FALSE(tension->pass);
    CHECK(*tension->order < 1.0);

    CHECK_THROWS_AS(run_convergence("clifford_torus", {32}, opt), ReportError);
}

TEST_CASE("superspace suite: polynomial exactness and grid orders") {
    const Report poly = run_super(7, "polynomial");
    CHECK(poly.failures() == 0);
    for (const char* name : {"square_relation", "anticommutator", "component_scalar",
                             "component_theta", "component_thetabar", "component_top",
                             "sphere_constraint", "obstruction_coefficient",
                             "dpw_closed_form", "dpw_laurent_degree"})
        CHECK_MESSAGE(find(poly, name) != nullptr, name);
    CHECK(find(poly, "component_top")->residual < 1e-12);

    const Report grid = run_super(7, "grid");
    CHECK(grid.failures() == 0);
    const CheckResult* mo = find(grid, "map_equation_order");
    REQUIRE(mo != nullptr);
    CHECK(*mo->order >= 1.7);

    CHECK_THROWS_AS(run_super(7, "fourier"), ReportError);
}

TEST_CASE("reports are deterministic and schema-stable") {
    const std::string a = run_super(42, "polynomial").dump();
    const std::string b = run_super(42, "polynomial").dump();
    CHECK(a == b);

    CheckOptions opt;
    opt.grid = 24;
    const std::string c = run_check("lagrangian_plane", opt).dump();
    const std::string d = run_check("lagrangian_plane", opt).dump();
    CHECK(c == d);

    const auto j = run_check("lagrangian_plane", opt).to_json();
    for (const char* key : {"subject", "grid", "checks", "lambda_samples", "versions", "seed"})
        CHECK_MESSAGE(j.contains(key), key);
    CHECK(j["grid"].contains("nx"));
    CHECK(j["grid"].contains("hx"));
    REQUIRE(j["checks"].is_array());
    for (const auto& cj : j["checks"]) {
        CHECK(cj.contains("name"));
        CHECK(cj.contains("residual"));
        CHECK(cj.contains("tolerance"));
        CHECK(cj.contains("pass"));
    }
    CHECK(j["lambda_samples"].size() == 2);
}

TEST_CASE("plot data covers every probed lambda") {
    CheckOptions opt;
    opt.grid = 24;
    opt.lambdas = {cplx(0, 1), cplx(2, 0), std::polar(1.0, M_PI / 5)};
    std::vector<PlotPoint> pts;
    run_check("clifford_torus", opt, &pts);
    CHECK(pts.size() == opt.lambdas.size());
    const std::string csv = plot_csv(pts);
    CHECK(csv.rfind("lambda_re,lambda_im,h,residual\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + int(pts.size()));
}

TEST_CASE("unknown subjects and invalid input are rejected") {
    CheckOptions opt;
    CHECK_THROWS(run_check("no_such_surface_or_file", opt));
}
