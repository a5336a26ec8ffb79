#include "hsl/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <random>
#include <sstream>

#include "hsl/gauss.hpp"
#include "hsl/lift.hpp"
#include "hsl/superspace.hpp"

namespace hsl {

using cplx = std::complex<double>;

namespace {

std::string fmt_num(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

// short lambda label used in check names: "i", "2", "0.809+0.588i", ...
std::string fmt_lambda(cplx l) {
    if (l.imag() == 0) return fmt_num(l.real());
    std::string im;
    if (l.imag() == 1)
        im = "i";
    else if (l.imag() == -1)
        im = "-i";
    else
        im = fmt_num(l.imag()) + "i";
    if (l.real() == 0) return im;
    return fmt_num(l.real()) + (l.imag() > 0 ? "+" : "") + im;
}

void add(std::vector<CheckResult>& cs, const std::string& name, double residual, double tol) {
    CheckResult r;
    r.name = name;
    r.residual = residual;
    r.tolerance = tol;
    r.pass = residual <= tol;
    cs.push_back(r);
}

bool is_builtin(const std::string& name) {
    const auto& all = builtin_names();
    return std::find(all.begin(), all.end(), name) != all.end();
}

void flatness_checks(std::vector<CheckResult>& cs, const LiftBundle& b, const CheckOptions& opt,
                     bool beta_family, double h, std::vector<PlotPoint>* plot) {
    bool first = true;
    for (cplx l : opt.lambdas) {
        const FlatnessResidual fr = flatness_residual(b, l, beta_family);
        add(cs, "flatness(" + fmt_lambda(l) + ")", fr.total, opt.discretization_tol);
        if (plot) plot->push_back({l, h, fr.total});
        if (first) {
            // the per-power split does not depend on the probe lambda
            add(cs, "flatness_laurent", fr.laurent_sum, opt.discretization_tol);
            first = false;
        }
    }
}

// Single-grid check pipeline shared by run_check and run_convergence. The
// applicable chain is selected by the subject's value dimension / kind.
std::vector<CheckResult> collect_checks(const std::string& subject, int n,
                                        const CheckOptions& opt, std::vector<PlotPoint>* plot,
                                        GridDomain* dom_out) {
    std::vector<CheckResult> cs;

    CatalogEntry entry;
    bool have_entry = false;
    Field<Eigen::VectorXd> fld;
    int dim = 0;
    if (is_builtin(subject)) {
        entry = builtin(subject);
        have_entry = true;
        dim = entry.dim;
    } else {
        fld = load_grid(subject);
        if (fld.v.empty()) throw ReportError("empty grid file: " + subject);
        dim = int(fld.v[0].size());
    }

    if (have_entry && entry.frame_only) {
        // rotor field: no immersion checks, only the zero-curvature family
        LiftBundle b = rotor_bundle_entry(entry, n);
        if (dom_out) *dom_out = b.F.dom;
        decompose_alpha(b, build_tau(GroupKind::Spin3H, opt.u));
        add(cs, "lift_condition", lift_condition_residual(b), opt.discretization_tol);
        flatness_checks(cs, b, opt, /*beta_family=*/true, b.F.dom.hx, plot);
        std::sort(cs.begin(), cs.end(),
                  [](const CheckResult& a, const CheckResult& b2) { return a.name < b2.name; });
        return cs;
    }

    if (dim == 8) {
        OctImmersion oi;
        if (have_entry) {
            oi = OctImmersion::from_entry(entry, n);
        } else {
            oi.X = octonion_field(fld);
            oi.Xx = ddx(oi.X);
            oi.Xy = ddy(oi.X);
        }
        if (dom_out) *dom_out = oi.X.dom;
        LiftBundle b = lift_hopf_oct(oi);
        decompose_alpha(b, build_tau_oct());
        add(cs, "lift_condition", lift_condition_residual(b), opt.discretization_tol);
        flatness_checks(cs, b, opt, /*beta_family=*/false, oi.X.dom.hx, plot);
        std::sort(cs.begin(), cs.end(),
                  [](const CheckResult& a, const CheckResult& b2) { return a.name < b2.name; });
        return cs;
    }

    const Immersion im = have_entry ? Immersion::from_entry(entry, n)
                                    : Immersion::from_field(quaternion_field(fld));
    if (dom_out) *dom_out = im.X.dom;
    const double conf = conformality_residual(im);
    if (conf > 1e-2)
        throw ReportError("nonconformal input: conformality residual " + fmt_num(conf));
    add(cs, "conformality", conf, opt.discretization_tol);

    if (dim == 3) {
        const CmcReport cmc = cmc_check(im);
        add(cs, "gauss_pair_antipodal", cmc.rho_plus_sigma_sup, opt.algebraic_tol);
        add(cs, "gauss_tension", cmc.tension_sup, opt.discretization_tol);
        add(cs, "mean_curvature_spread", cmc.mean_h_spread, opt.discretization_tol);
        std::sort(cs.begin(), cs.end(),
                  [](const CheckResult& a, const CheckResult& b2) { return a.name < b2.name; });
        return cs;
    }

    // full quaternionic surface: Gauss map, angle, lift, flatness family.
    // With closed-form derivatives the Lagrangian condition is pointwise
    // algebra; from sampled grids the Gauss map itself carries O(h^2) error.
    const double lag_tol =
        (have_entry && entry.eval_dx) ? opt.algebraic_tol : opt.discretization_tol;
    const GaussData gauss = gauss_data(im, lag_tol, /*conf_tol=*/1e-2);
    add(cs, "lagrangian", gauss.lagrangian_sup, lag_tol);
    add(cs, "defining_relation", gauss.defining_residual, opt.discretization_tol);

    if (gauss.lagrangian) {
        add(cs, "angle_harmonicity", hsl_residual(im).flat, opt.discretization_tol);
        add(cs, "mean_curvature_identity", mean_curvature(im).identity_residual,
            opt.discretization_tol);
        const HslReductionReport red = hsl_reduction_check(im);
        add(cs, "angle_reduction_circle", red.u1_residual, opt.discretization_tol);
        add(cs, "angle_reduction_det", red.det_residual, opt.discretization_tol);
    }

    LiftBundle bh = lift_hopf(im, opt.u);
    decompose_alpha(bh, build_tau(GroupKind::Spin3H, opt.u));
    add(cs, "lift_condition_hopf", lift_condition_residual(bh), opt.discretization_tol);

    LiftBundle bf = lift_frame(im, opt.u);
    decompose_alpha(bf, build_tau(GroupKind::SO4R4, opt.u));
    add(cs, "lift_condition_frame", lift_condition_residual(bf), opt.discretization_tol);

    flatness_checks(cs, bh, opt, /*beta_family=*/false, im.X.dom.hx, plot);
    if (!opt.lambdas.empty())
        add(cs, "family_curvature_identity",
            lemma2_identity_residual(bh, opt.lambdas.front()), opt.discretization_tol);

    std::sort(cs.begin(), cs.end(),
              [](const CheckResult& a, const CheckResult& b2) { return a.name < b2.name; });
    return cs;
}

}  // namespace

int Report::failures() const {
    int n = 0;
    for (const auto& c : checks)
        if (!c.pass) ++n;
    return n;
}

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j;
    j["subject"] = subject;
    j["grid"] = {{"nx", nx}, {"ny", ny}, {"hx", hx}, {"hy", hy}};
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["residual"] = c.residual;
        cj["tolerance"] = c.tolerance;
        if (c.order) cj["order"] = *c.order;
        cj["exact"] = c.exact;
        cj["pass"] = c.pass;
        j["checks"].push_back(cj);
    }
    j["lambda_samples"] = nlohmann::ordered_json::array();
    for (cplx l : lambda_samples)
        j["lambda_samples"].push_back({l.real(), l.imag()});
    j["versions"] = {{"schema", "1"},
                     {"hslcheck", "0.1.0"},
                     {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                   std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                   std::to_string(EIGEN_MINOR_VERSION)}};
    j["seed"] = seed;
    return j;
}

Report run_check(const std::string& subject, const CheckOptions& opt,
                 std::vector<PlotPoint>* plot) {
    Report rep;
    rep.subject = subject;
    rep.lambda_samples = opt.lambdas;
    GridDomain dom;
    rep.checks = collect_checks(subject, opt.grid, opt, plot, &dom);
    rep.nx = dom.nx;
    rep.ny = dom.ny;
    rep.hx = dom.hx;
    rep.hy = dom.hy;
    return rep;
}

Report run_convergence(const std::string& subject, const std::vector<int>& grids,
                       const CheckOptions& opt, std::vector<PlotPoint>* plot) {
    if (grids.size() < 2) throw ReportError("convergence study needs at least 2 grids");
    Report rep;
    rep.subject = subject;
    rep.lambda_samples = opt.lambdas;

    std::map<std::string, std::vector<std::pair<double, double>>> levels;
    std::map<std::string, double> finest;
    GridDomain dom;
    for (int n : grids) {
        const auto cs = collect_checks(subject, n, opt, plot, &dom);
        for (const auto& c : cs) {
            levels[c.name].push_back({dom.hx, c.residual});
            finest[c.name] = c.residual;
        }
    }
    rep.nx = dom.nx;
    rep.ny = dom.ny;
    rep.hx = dom.hx;
    rep.hy = dom.hy;

    // pass = genuine O(h^2)-style decay (order >= 1.7) or rounding-level
    // residuals on every grid; the tolerance column carries the order bar
    for (const auto& [name, lv] : levels) {
        // stencil-exact residuals grow like eps/h^2 under refinement; classify
        // anything at that level as rounding-exact rather than non-convergent
        const ConvergenceOrder co = convergence_order(lv, 1e-10);
        CheckResult r;
        r.name = name;
        r.residual = finest[name];
        r.tolerance = 1.7;
        r.order = co.order;
        r.exact = co.exact;
        r.pass = co.exact || co.order >= 1.7;
        rep.checks.push_back(r);
    }
    return rep;
}

namespace {

using GP = Grass<Poly2>;
using VP = GVec<Poly2>;

Poly2 rand_poly(std::mt19937_64& rng, int deg = 2) {
    std::uniform_real_distribution<double> u(-1, 1);
    Poly2 p;
    for (int a = 0; a <= deg; ++a)
        for (int b = 0; b <= deg - a; ++b) p.c[{a, b}] = cplx(u(rng), u(rng));
    return p;
}

GP rand_superfield(std::mt19937_64& rng) {
    GP x;
    for (unsigned mask : {0u, 1u, 2u, 3u, 4u, 5u, 12u, 20u}) x.set(mask, rand_poly(rng));
    return x;
}

// polynomial superfield data on the unit sphere of C^4 (bilinear form):
// u = (1 - w^2, 2w, i(1 + w^2), 1) has <u, u> = 1 identically in w
struct SphereData {
    SuperFieldData<Poly2> d;
    VP psi, psibar;
    GP Q;
};

SphereData make_sphere_data(std::mt19937_64& rng) {
    const Poly2 w = Poly2::monomial(1, 0) + Poly2::monomial(0, 2, cplx(0.3, 0.2));
    const Poly2 one(1.0), zero;
    auto P = [](const Poly2& p) { return GP{p}; };

    SuperFieldData<Poly2> d;
    d.u = {P(one - w * w), P(2.0 * w), P(cplx(0, 1) * (one + w * w)), P(one)};
    const VP t1 = {P(-2.0 * w), P(Poly2(2.0)), P(Poly2(cplx(0, 2)) * w), P(zero)};
    VP t2 = {P(Poly2(-2.0)), P(zero), P(Poly2(cplx(0, 2))), P(zero)};
    t2 = t2 + 4.0 * d.u;

    const GP e1 = grass_gen<Poly2>(2), e2 = grass_gen<Poly2>(3);
    const GP e3 = grass_gen<Poly2>(4), e4 = grass_gen<Poly2>(5);
    const Poly2 a = rand_poly(rng, 1), b = rand_poly(rng, 1);
    d.psi1 = (e1 * P(a)) * t1 + (e2 * P(b)) * t2;
    d.psi2 = (e3 * P(b + a)) * t1 + (e4 * P(Poly2(0.8) * a)) * t2;

    SphereData out;
    out.psi = d.psi1 - VP(cplx(0, 1) * d.psi2);
    out.psibar = d.psi1 + VP(cplx(0, 1) * d.psi2);
    out.Q = sdot(out.psi, out.psibar);
    d.auxF = (cplx(0, -0.5) * out.Q) * d.u;
    out.d = d;
    return out;
}

double circle_map_residual(double (*f)(double, double), int n) {
    const GridDomain dom = box_domain(-1, 1, -1, 1, n);
    SuperFieldData<GridC> d;
    auto fl = [&](auto g) { return Grass<GridC>{GridC(sample<cplx>(dom, g))}; };
    d.u = {fl([f](double x, double y) { return cplx(std::cos(f(x, y))); }),
           fl([f](double x, double y) { return cplx(std::sin(f(x, y))); }),
           Grass<GridC>{GridC(0.0)}};
    d.psi1 = d.psi2 = {Grass<GridC>{}, Grass<GridC>{}, Grass<GridC>{}};
    d.auxF = {Grass<GridC>{}, Grass<GridC>{}, Grass<GridC>{}};
    return gnorm(superharmonic_component_residuals(d).r_map);
}

GMat<GridC> circle_frame(const GridDomain& dom, double (*f)(double, double)) {
    GMat<GridC> F(3, 3);
    auto put = [&](int i, int j, auto g) {
        F.at(i, j) = Grass<GridC>{GridC(sample<cplx>(dom, g))};
    };
    put(0, 0, [f](double x, double y) { return cplx(-std::sin(f(x, y))); });
    put(1, 0, [f](double x, double y) { return cplx(std::cos(f(x, y))); });
    put(2, 1, [](double, double) { return cplx(1.0); });
    put(0, 2, [f](double x, double y) { return cplx(std::cos(f(x, y))); });
    put(1, 2, [f](double x, double y) { return cplx(std::sin(f(x, y))); });
    return F;
}

GMat<GridC> transpose(const GMat<GridC>& m) {
    GMat<GridC> out(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
    return out;
}

double harmonic_angle(double x, double y) { return x * x - y * y; }
double nonharmonic_angle(double x, double y) { return x + y * y; }

double frame_family_residual(double (*f)(double, double), int n, cplx lambda,
                             const Eigen::MatrixXd& S) {
    const GridDomain dom = box_domain(-1, 1, -1, 1, n);
    const GMat<GridC> F = circle_frame(dom, f);
    const auto alpha = pullback_connection(F, transpose(F));
    return lambda_family_expression(alpha.aD, alpha.aDbar, S, lambda).gnorm();
}

void add_order(std::vector<CheckResult>& cs, const std::string& name,
               const std::vector<std::pair<double, double>>& lv) {
    const ConvergenceOrder co = convergence_order(lv);
    CheckResult r;
    r.name = name;
    r.residual = lv.back().second;
    r.tolerance = 1.7;
    r.order = co.order;
    r.exact = co.exact;
    r.pass = co.exact || co.order >= 1.7;
    cs.push_back(r);
}

}  // namespace

Report run_super(std::uint64_t seed, const std::string& mode) {
    if (mode != "polynomial" && mode != "grid")
        throw ReportError("run_super: mode must be 'polynomial' or 'grid'");
    Report rep;
    rep.subject = "superspace:" + mode;
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    auto& cs = rep.checks;

    if (mode == "polynomial") {
        const double exact_tol = 1e-12;

        // super derivative algebra on random superfields
        double sq = 0, anti = 0;
        for (int t = 0; t < 4; ++t) {
            const GP x = rand_superfield(rng);
            sq = std::max(sq, (D_op(D_op(x)) + x.dz()).gnorm());
            sq = std::max(sq, (Dbar_op(Dbar_op(x)) + x.dzbar()).gnorm());
            anti = std::max(anti, (D_op(Dbar_op(x)) + Dbar_op(D_op(x))).gnorm());
        }
        add(cs, "square_relation", sq, exact_tol);
        add(cs, "anticommutator", anti, exact_tol);

        // superfield equation vs coupled component system on sphere data
        const SphereData pd = make_sphere_data(rng);
        const auto r = superharmonic_component_residuals(pd.d);
        const VP e4 = superharmonic_phi_residual(assemble_phi(pd.d));
        const VP rbar_spinor =
            sphere_nabla_z(pd.psibar, pd.d.u) - VP(0.25 * (pd.Q * pd.psi));

        add(cs, "component_scalar",
            gnorm(theta_component(e4, 0) - VP(cplx(0, 0.5) * r.r_aux)), exact_tol);
        add(cs, "component_theta",
            gnorm(theta_component(e4, 1) -
                  (VP(0.5 * rbar_spinor) -
                   VP((cplx(0, 0.25) * sdot(r.r_aux, pd.psi)) * pd.d.u))),
            exact_tol);
        add(cs, "component_thetabar",
            gnorm(theta_component(e4, 2) -
                  (VP(cplx(-0.5) * r.r_spinor) -
                   VP((cplx(0, 0.25) * sdot(pd.psibar, r.r_aux)) * pd.d.u))),
            exact_tol);
        {
            VP expect = VP(cplx(-1) * r.r_map);
            expect = expect - VP((cplx(0, 0.125) * pd.Q) * r.r_aux);
            expect = expect + VP((cplx(0, 0.125) * sdot(r.r_aux, pd.psi)) * pd.psibar);
            expect = expect - VP((cplx(0, 0.125) * sdot(pd.psibar, r.r_aux)) * pd.psi);
            expect = expect + VP((0.25 * sdot(r.r_spinor, pd.psi)) * pd.d.u);
            expect = expect - VP((0.25 * sdot(pd.psibar, rbar_spinor)) * pd.d.u);
            expect = expect + VP((0.25 * sdot(r.r_aux, r.r_aux)) * pd.d.u);
            expect = expect - VP((cplx(0, 0.25) * (pd.Q * sdot(r.r_aux, pd.d.u))) * pd.d.u);
            add(cs, "component_top", gnorm(theta_component(e4, 3) - expect), exact_tol);
        }
        const GP phisq = sdot(assemble_phi(pd.d), assemble_phi(pd.d));
        add(cs, "sphere_constraint", (phisq - GP{Poly2(1.0)}).gnorm(), exact_tol);

        // lambda^{-1} coefficient of the family expression vs the displayed
        // obstruction, on a random odd connection
        {
            const Eigen::MatrixXd S = Eigen::Vector3d(1, 1, -1).asDiagonal();
            GMat<Poly2> aD(3, 3), aDbar(3, 3);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    aD.at(i, j).set(1u << 2, rand_poly(rng, 1));
                    aD.at(i, j).set(1u << 3, rand_poly(rng, 1));
                    aDbar.at(i, j).set(1u << 4, rand_poly(rng, 1));
                    aDbar.at(i, j).set(1u << 2, rand_poly(rng, 1));
                }
            const GMat<Poly2> dft = lambda_power_component(aD, aDbar, S, -1);
            const GMat<Poly2> expr = superharmonicity_expression(aD, aDbar, S);
            add(cs, "obstruction_coefficient", (dft - expr).gnorm(), exact_tol);
        }

        // DPW integration against the closed-form solution
        {
            std::uniform_real_distribution<double> u(-1, 1);
            auto rmat = [&](unsigned mask) {
                GMatC m(3, 3);
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        m.at(i, j).set(mask, Cnum(cplx(u(rng), u(rng))));
                return m;
            };
            const GMatC A = rmat(1u << 2) + rmat(1u << 3);
            LaurentGMat mu0{{-1, A}}, mutheta;
            const cplx lam(0.7, 0.4);
            const DpwSolution sol = dpw_integrate(mu0, mutheta, 3, lam);
            const GMatC expect =
                GMatC::identity(3) - GMatC((1.0 / (lam * lam)) * (A * A));
            add(cs, "dpw_closed_form", (sol.g0.back() - expect).gnorm(), 1e-8);
            add(cs, "dpw_theta_consistency",
                (sol.gtheta.back() - sol.g0.back() * laurent_eval(mu0, lam, 3)).gnorm(),
                exact_tol);
            add(cs, "dpw_flatness", sol.d_residual, 1e-8);

            // leading Laurent power of g0^{-1} d_z g0 must be lambda^{-2}:
            // residual = coefficient mass below that power, plus 1 if the
            // lambda^{-2} coefficient itself is missing
            LaurentGMat m0{{-1, A}, {0, rmat(1u << 4)}};
            LaurentGMat mt{{-1, rmat((1u << 2) | (1u << 3))},
                           {0, rmat((1u << 2) | (1u << 4))}};
            const auto powers = dpw_laurent_scan(m0, mt, 3);
            double tail = std::max(powers.at(-3), powers.at(-4));
            if (powers.at(-2) <= 1e-3) tail += 1.0;
            add(cs, "dpw_laurent_degree", tail, 1e-8);
        }
    } else {
        // grid mode: discretization-order checks on superharmonic examples
        const Eigen::MatrixXd S = Eigen::Vector3d(1, 1, -1).asDiagonal();
        // the coarsest useful grid: below ~33 points the pre-asymptotic error
        // contaminates the fitted slope
        const std::vector<int> grids{33, 65, 129};

        std::vector<std::pair<double, double>> lv;
        for (int n : grids) lv.push_back({2.0 / (n - 1), circle_map_residual(harmonic_angle, n)});
        add_order(cs, "map_equation_order", lv);

        lv.clear();
        for (int n : grids)
            lv.push_back({2.0 / (n - 1), frame_family_residual(harmonic_angle, n, cplx(0, 1), S)});
        add_order(cs, "family_flatness_order", lv);

        lv.clear();
        for (int n : grids)
            lv.push_back({2.0 / (n - 1), frame_family_residual(harmonic_angle, n, cplx(1, 0), S)});
        add_order(cs, "maurer_cartan_order", lv);

        // non-harmonic control: the lambda^{-1} obstruction is h-stable and
        // bounded away from zero
        auto obstruction = [&](int n) {
            const GridDomain dom = box_domain(-1, 1, -1, 1, n);
            const GMat<GridC> F = circle_frame(dom, nonharmonic_angle);
            const auto alpha = pullback_connection(F, transpose(F));
            return lambda_power_component(alpha.aD, alpha.aDbar, S, -1).gnorm();
        };
        const double o1 = obstruction(33), o2 = obstruction(65);
        add(cs, "obstruction_stability", std::abs(o1 - o2) / std::max(o1, o2), 0.1);
        // pass iff the obstruction magnitude exceeds 0.1 (reported inverted so
        // that smaller is better, like every other residual)
        add(cs, "obstruction_magnitude", o2 > 0.1 ? 0.0 : 1.0, 0.5);
    }

    std::sort(cs.begin(), cs.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    return rep;
}

std::string plot_csv(const std::vector<PlotPoint>& pts) {
    std::ostringstream os;
    os << "lambda_re,lambda_im,h,residual\n";
    os << std::setprecision(12);
    for (const auto& p : pts)
        os << p.lambda.real() << "," << p.lambda.imag() << "," << p.h << "," << p.residual
           << "\n";
    return os.str();
}

}  // namespace hsl
