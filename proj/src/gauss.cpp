#include "hsl/gauss.hpp"

#include <cmath>
#include <limits>

namespace hsl {

namespace {

// valid-region margins shared by a set of fields over one domain
template <class... F>
std::pair<int, int> joint_margin(const F&... fs) {
    return {std::max({fs.mx...}), std::max({fs.my...})};
}

template <class T, class Fn>
void for_joint(const Field<T>& lead, std::pair<int, int> m, Fn&& f) {
    Field<T> probe = lead;
    probe.mx = m.first;
    probe.my = m.second;
    probe.for_valid(std::forward<Fn>(f));
}

}  // namespace

Immersion Immersion::from_field(const Field<Quaternion>& X, double eps) {
    Immersion im;
    im.X = X;
    im.Xx = ddx(X);
    im.Xy = ddy(X);
    // use one joint valid region for both derivative fields
    const auto m = joint_margin(im.Xx, im.Xy);
    im.Xx.mx = im.Xy.mx = m.first;
    im.Xx.my = im.Xy.my = m.second;
    im.ew = Field<double>(X.dom);
    im.ew.mx = m.first;
    im.ew.my = m.second;
    im.ew.for_valid([&](int i, int j) {
        const double n = im.Xx.at(i, j).norm();
        if (n < eps) throw GaussError("immersion degenerate: |X_x| ~ 0 at a grid point");
        im.ew.at(i, j) = n;
    });
    double re = 0;
    X.for_valid([&](int i, int j) { re = std::max(re, std::abs(X.at(i, j).w)); });
    im.imaginary = re < 1e-10;
    return im;
}

Immersion Immersion::from_entry(const CatalogEntry& e, int n, double eps) {
    if (e.frame_only)
        throw GaussError("catalog entry '" + e.name + "' is frame-only, not an immersion");
    const auto X = quaternion_field(sample_entry(e, n));
    if (!e.eval_dx) return from_field(X, eps);
    Immersion im;
    im.X = X;
    const GridDomain dom = X.dom;
    im.Xx = sample<Quaternion>(dom, [&](double x, double y) { return to_quaternion(e.eval_dx(x, y)); });
    im.Xy = sample<Quaternion>(dom, [&](double x, double y) { return to_quaternion(e.eval_dy(x, y)); });
    im.ew = map_field(im.Xx, [&](const Quaternion& q) {
        if (q.norm() < eps) throw GaussError("immersion degenerate: |X_x| ~ 0 at a grid point");
        return q.norm();
    });
    im.imaginary = e.dim == 3;
    return im;
}

double conformality_residual(const Immersion& im, double eps) {
    double worst = 0;
    for_joint(im.Xx, joint_margin(im.Xx, im.Xy), [&](int i, int j) {
        const double a = im.Xx.at(i, j).norm(), b = im.Xy.at(i, j).norm();
        const double s = std::max(a, b);
        if (s * s < eps) throw GaussError("conformality_residual: degenerate point");
        const double r =
            (std::abs(a - b) + std::abs(dot(im.Xx.at(i, j), im.Xy.at(i, j)))) / (s * s);
        worst = std::max(worst, r);
    });
    return worst;
}

const Field<double>& GaussData::beta_checked() const {
    if (!lagrangian)
        throw GaussError("Lagrangian angle requested on a non-Lagrangian surface (sup |<rho,i>| = " +
                         std::to_string(lagrangian_sup) + ")");
    return beta;
}

GaussData gauss_data(const Immersion& im, double lag_tol, double conf_tol) {
    const double conf = conformality_residual(im);
    if (conf > conf_tol)
        throw GaussError("gauss_data: immersion is not conformal (residual " +
                         std::to_string(conf) + ")");
    GaussData g;
    const auto m = joint_margin(im.Xx, im.Xy);
    auto mk = [&](auto init) {
        Field<decltype(init)> f(im.X.dom, init);
        f.mx = m.first;
        f.my = m.second;
        return f;
    };
    g.e1 = mk(Quaternion{});
    g.e2 = mk(Quaternion{});
    g.rho = mk(Quaternion{});
    g.sigma = mk(Quaternion{});
    g.ew = im.ew;
    g.w1 = mk(0.0);
    g.w2 = mk(0.0);
    g.w3 = mk(0.0);
    g.beta = mk(0.0);

    g.e1.for_valid([&](int i, int j) {
        const Quaternion e1 = im.Xx.at(i, j).normalized();
        const Quaternion e2 = im.Xy.at(i, j).normalized();
        const auto [rho, sigma] = stiefel_rho_sigma(e1, e2, std::max(conf_tol, 10 * conf));
        g.e1.at(i, j) = e1;
        g.e2.at(i, j) = e2;
        g.rho.at(i, j) = rho;
        g.sigma.at(i, j) = sigma;
        g.w1.at(i, j) = dot(Quaternion::i() * e1, e2);
        g.w2.at(i, j) = dot(Quaternion::j() * e1, e2);
        g.w3.at(i, j) = dot(Quaternion::k() * e1, e2);
        g.lagrangian_sup = std::max(g.lagrangian_sup, std::abs(rho.x));

        // defining relation i dX/dz = rho dX/dz (i the complex scalar):
        // real part Xy - rho Xx, imaginary part Xx + rho Xy, halved.
        const Quaternion xx = im.Xx.at(i, j), xy = im.Xy.at(i, j);
        const Quaternion re = 0.5 * (xy - rho * xx), imag = 0.5 * (xx + rho * xy);
        const double xz = 0.5 * std::sqrt(xx.norm2() + xy.norm2());
        g.defining_residual =
            std::max(g.defining_residual, std::sqrt(re.norm2() + imag.norm2()) / xz);
    });
    g.lagrangian = g.lagrangian_sup < lag_tol;

    // greedy nearest-branch unwrap of rho = e^{i beta} j, row-major from the
    // first valid corner: continue along the row, rows continue from the
    // previous row's first entry.
    const double twopi = 2 * M_PI;
    for (int i = g.beta.ilo(); i < g.beta.ihi(); ++i)
        for (int j = g.beta.jlo(); j < g.beta.jhi(); ++j) {
            const Quaternion& r = g.rho.at(i, j);
            const double raw = std::atan2(r.z, r.y);
            if (i == g.beta.ilo() && j == g.beta.jlo()) {
                g.beta.at(i, j) = raw;
                continue;
            }
            const double ref = (j == g.beta.jlo()) ? g.beta.at(i - 1, j) : g.beta.at(i, j - 1);
            const double b = raw + twopi * std::round((ref - raw) / twopi);
            g.beta.at(i, j) = b;
            g.beta_max_jump = std::max(g.beta_max_jump, std::abs(b - ref));
        }
    return g;
}

double lagrangian_residual(const Immersion& im) {
    const GaussData g = gauss_data(im, std::numeric_limits<double>::infinity());
    double route1 = 0;
    g.e1.for_valid([&](int i, int j) {
        const double w1 = dot(Quaternion::i() * im.Xx.at(i, j), im.Xy.at(i, j));
        const double e2w = im.ew.at(i, j) * im.ew.at(i, j);
        route1 = std::max(route1, std::abs(w1) / e2w);
    });
    return std::max(route1, g.lagrangian_sup);
}

MeanCurvature mean_curvature(const Immersion& im, double lag_tol) {
    const GaussData g = gauss_data(im, lag_tol);
    const Field<double>& beta = g.beta_checked();
    const Field<Quaternion> lap = laplacian(im.X);
    const Field<double> bx = ddx(beta), by = ddy(beta);

    MeanCurvature mc;
    const auto m = joint_margin(lap, bx, by, g.e1);
    mc.h = Field<Quaternion>(im.X.dom);
    mc.j_grad_beta = Field<Quaternion>(im.X.dom);
    mc.h.mx = mc.j_grad_beta.mx = m.first;
    mc.h.my = mc.j_grad_beta.my = m.second;
    mc.h.for_valid([&](int i, int j) {
        const double s = 1.0 / (im.ew.at(i, j) * im.ew.at(i, j));
        const Quaternion& e1 = g.e1.at(i, j);
        const Quaternion& e2 = g.e2.at(i, j);
        Quaternion h = lap.at(i, j);
        h -= dot(h, e1) * e1 + dot(h, e2) * e2;  // normal projection
        mc.h.at(i, j) = s * h;
        mc.j_grad_beta.at(i, j) =
            s * (bx.at(i, j) * (Quaternion::i() * im.Xx.at(i, j)) +
                 by.at(i, j) * (Quaternion::i() * im.Xy.at(i, j)));
        mc.identity_residual = std::max(
            mc.identity_residual, (mc.h.at(i, j) - mc.j_grad_beta.at(i, j)).norm());
    });
    return mc;
}

double hsl_residual_from_beta(const Field<double>& beta) {
    return sup_norm(laplacian(beta));
}

HslResidual hsl_residual(const Immersion& im, double lag_tol) {
    const GaussData g = gauss_data(im, lag_tol);
    const Field<double>& beta = g.beta_checked();
    if (g.beta_max_jump > M_PI / 2)
        throw GaussError("hsl_residual: branch jump detected in the unwrapped angle (step " +
                         std::to_string(g.beta_max_jump) + ")");
    const Field<double> lap = laplacian(beta);
    HslResidual r;
    for_joint(lap, joint_margin(lap, im.ew), [&](int i, int j) {
        const double v = std::abs(lap.at(i, j));
        r.flat = std::max(r.flat, v);
        r.intrinsic = std::max(r.intrinsic, v / (im.ew.at(i, j) * im.ew.at(i, j)));
    });
    return r;
}

SpecialLagrangianReport special_lagrangian_check(const Immersion& im, double tol) {
    const GaussData g = gauss_data(im);
    const Field<double>& beta = g.beta_checked();
    double sum = 0;
    size_t cnt = 0;
    beta.for_valid([&](int i, int j) {
        sum += beta.at(i, j);
        ++cnt;
    });
    const double mean = sum / double(cnt);
    SpecialLagrangianReport rep;
    beta.for_valid([&](int i, int j) {
        rep.deviation = std::max(rep.deviation, std::abs(beta.at(i, j) - mean));
    });
    rep.special = rep.deviation < tol;
    return rep;
}

CmcReport cmc_check(const Immersion& im) {
    if (!im.imaginary)
        throw GaussError("cmc_check: immersion must take values in Im H");
    const GaussData g = gauss_data(im, std::numeric_limits<double>::infinity());
    CmcReport rep;
    Field<Eigen::Vector3d> n(im.X.dom);
    n.mx = g.rho.mx;
    n.my = g.rho.my;
    n.for_valid([&](int i, int j) {
        const Quaternion sum = g.rho.at(i, j) + g.sigma.at(i, j);
        rep.rho_plus_sigma_sup = std::max(rep.rho_plus_sigma_sup, sum.norm());
        n.at(i, j) = g.rho.at(i, j).imag_vec();
    });
    rep.tension_sup = sup_norm(tension_sphere(n));

    const Field<Quaternion> lap = laplacian(im.X);
    const auto m = joint_margin(lap, g.rho);
    double sum = 0, lo = 0, hi = 0;
    size_t cnt = 0;
    bool first = true;
    for_joint(lap, m, [&](int i, int j) {
        const double s = 1.0 / (im.ew.at(i, j) * im.ew.at(i, j));
        const double h = s * dot(lap.at(i, j), g.rho.at(i, j));
        sum += h;
        ++cnt;
        lo = first ? h : std::min(lo, h);
        hi = first ? h : std::max(hi, h);
        first = false;
    });
    rep.mean_h = sum / double(cnt);
    rep.mean_h_spread = std::max(hi - rep.mean_h, rep.mean_h - lo);
    return rep;
}

}  // namespace hsl
