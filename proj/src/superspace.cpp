#include "hsl/superspace.hpp"

#include <cmath>

namespace hsl {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Poly2
// ---------------------------------------------------------------------------

Poly2 Poly2::monomial(int a, int b, cplx v) {
    Poly2 p;
    if (v != cplx(0, 0)) p.c[{a, b}] = v;
    return p;
}

Poly2 Poly2::dz() const {
    Poly2 out;
    for (const auto& [deg, v] : c)
        if (deg.first > 0) out.c[{deg.first - 1, deg.second}] = double(deg.first) * v;
    return out;
}

Poly2 Poly2::dzbar() const {
    Poly2 out;
    for (const auto& [deg, v] : c)
        if (deg.second > 0) out.c[{deg.first, deg.second - 1}] = double(deg.second) * v;
    return out;
}

double Poly2::rnorm() const {
    double m = 0;
    for (const auto& [deg, v] : c) m = std::max(m, std::abs(v));
    return m;
}

void Poly2::prune(double tol) {
    for (auto it = c.begin(); it != c.end();)
        it = std::abs(it->second) <= tol ? c.erase(it) : std::next(it);
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 out = a;
    for (const auto& [deg, v] : b.c) out.c[deg] += v;
    out.prune();
    return out;
}

Poly2 operator-(const Poly2& a, const Poly2& b) {
    Poly2 out = a;
    for (const auto& [deg, v] : b.c) out.c[deg] -= v;
    out.prune();
    return out;
}

Poly2 operator-(const Poly2& a) {
    Poly2 out;
    for (const auto& [deg, v] : a.c) out.c[deg] = -v;
    return out;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 out;
    for (const auto& [da, va] : a.c)
        for (const auto& [db, vb] : b.c)
            out.c[{da.first + db.first, da.second + db.second}] += va * vb;
    out.prune();
    return out;
}

Poly2 operator*(cplx s, const Poly2& a) {
    Poly2 out;
    if (s == cplx(0, 0)) return out;
    for (const auto& [deg, v] : a.c) out.c[deg] = s * v;
    return out;
}

// ---------------------------------------------------------------------------
// GridC
// ---------------------------------------------------------------------------

namespace {

template <class Fn>
GridC grid_zip(const GridC& a, const GridC& b, Fn&& f) {
    if (a.uniform && b.uniform) return GridC(f(a.k, b.k));
    if (a.uniform) {
        Field<cplx> out = b.f;
        for (auto& v : out.v) v = f(a.k, v);
        return GridC(std::move(out));
    }
    if (b.uniform) {
        Field<cplx> out = a.f;
        for (auto& v : out.v) v = f(v, b.k);
        return GridC(std::move(out));
    }
    if (!(a.f.dom == b.f.dom)) throw SuperError("GridC: domain mismatch");
    Field<cplx> out = a.f;
    out.mx = std::max(a.f.mx, b.f.mx);
    out.my = std::max(a.f.my, b.f.my);
    for (size_t i = 0; i < out.v.size(); ++i) out.v[i] = f(a.f.v[i], b.f.v[i]);
    return GridC(std::move(out));
}

}  // namespace

GridC operator+(const GridC& a, const GridC& b) {
    return grid_zip(a, b, [](cplx x, cplx y) { return x + y; });
}
GridC operator-(const GridC& a, const GridC& b) {
    return grid_zip(a, b, [](cplx x, cplx y) { return x - y; });
}
GridC operator-(const GridC& a) { return grid_zip(GridC{}, a, [](cplx, cplx y) { return -y; }); }
GridC operator*(const GridC& a, const GridC& b) {
    if (a.is_zero() || b.is_zero()) return GridC{};
    return grid_zip(a, b, [](cplx x, cplx y) { return x * y; });
}
GridC operator*(cplx s, const GridC& a) {
    if (s == cplx(0, 0)) return GridC{};
    return grid_zip(GridC(s), a, [](cplx x, cplx y) { return x * y; });
}

// ---------------------------------------------------------------------------
// DPW
// ---------------------------------------------------------------------------

GMatC laurent_eval(const LaurentGMat& m, cplx lambda, int n) {
    GMatC out(n, n);
    for (const auto& [p, coeff] : m) out = out + GMatC(std::pow(lambda, p) * coeff);
    return out;
}

DpwSolution dpw_integrate(const LaurentGMat& mu0, const LaurentGMat& mu_theta, int n,
                          cplx lambda, double zmax, int steps) {
    if (lambda == cplx(0, 0)) throw SuperError("dpw_integrate: lambda must be nonzero");
    const GMatC m0 = laurent_eval(mu0, lambda, n);
    const GMatC mt = laurent_eval(mu_theta, lambda, n);
    for (const auto& e : m0.a)
        if (e.parity() == 0 && !e.is_zero())
            throw SuperError("dpw_integrate: mu_0(D) must be odd-valued");

    // g_0' = g_0 * rhs with rhs = -((mu_0(D))^2 + mu_theta(D)), z-independent
    const GMatC rhs = GMatC(cplx(-1.0) * (m0 * m0 + mt));

    DpwSolution sol;
    const double h = zmax / steps;
    GMatC g = GMatC::identity(n);
    auto record = [&](double z, const GMatC& gk) {
        sol.z.push_back(z);
        sol.g0.push_back(gk);
        sol.gtheta.push_back(gk * m0);
    };
    record(0.0, g);
    for (int k = 0; k < steps; ++k) {
        // classical RK4 for the linear constant-coefficient system
        const GMatC k1 = g * rhs;
        const GMatC k2 = (g + GMatC(cplx(h / 2) * k1)) * rhs;
        const GMatC k3 = (g + GMatC(cplx(h / 2) * k2)) * rhs;
        const GMatC k4 = (g + GMatC(cplx(h) * k3)) * rhs;
        g = g + GMatC(cplx(h / 6) * (k1 + GMatC(cplx(2) * k2) + GMatC(cplx(2) * k3) + k4));
        for (const auto& e : g.a)
            if (e.gnorm() > 1e12 || !std::isfinite(e.gnorm()))
                throw SuperError("dpw_integrate: ODE solution blew up");
        record((k + 1) * h, g);
    }

    // residual of Dg = g mu(D) for g = g_0 + theta g_theta:
    // theta-free part g_theta - g_0 mu_0(D) vanishes by construction; the
    // theta part is -(dg_0/dz + g_0 ((mu_0)^2 + mu_theta)), checked with the
    // z-derivative taken by central differences (independent of the ODE rule)
    for (int k = 1; k + 1 < int(sol.z.size()); ++k) {
        const GMatC dg0 = GMatC(cplx(1.0 / (2 * h)) * (sol.g0[k + 1] - sol.g0[k - 1]));
        const GMatC res = dg0 - sol.g0[k] * rhs;
        sol.d_residual = std::max(sol.d_residual, res.gnorm());
    }
    return sol;
}

std::map<int, double> dpw_laurent_scan(const LaurentGMat& mu0, const LaurentGMat& mu_theta,
                                       int n, double zmax, int steps) {
    // sample g_0^{-1} d_z g_0 = -((mu_0)^2 + mu_theta) at the endpoint over
    // 8 unit-circle lambdas, recovered from the integrated solution itself
    const int m = 8;
    std::vector<GMatC> vals;
    for (int s = 0; s < m; ++s) {
        const cplx lam = std::polar(1.0, 2 * M_PI * s / m);
        const DpwSolution sol = dpw_integrate(mu0, mu_theta, n, lam, zmax, steps);
        // recover the logarithmic derivative by central differences at the
        // next-to-last sample
        const int k = int(sol.z.size()) - 2;
        const double h = sol.z[1] - sol.z[0];
        const GMatC dg0 = GMatC(cplx(1.0 / (2 * h)) * (sol.g0[k + 1] - sol.g0[k - 1]));
        // g_0 = 1 + nilpotent for the potentials in scope: invert by Neumann
        const GMatC i = GMatC::identity(n);
        const GMatC nmat = sol.g0[k] - i;
        GMatC inv = i, pw = i;
        for (int t = 1; t <= 6; ++t) {
            pw = pw * nmat;
            inv = (t % 2) ? inv - pw : inv + pw;
        }
        if ((inv * sol.g0[k] - i).gnorm() > 1e-8)
            throw SuperError("dpw_laurent_scan: g_0 is not unipotent, cannot invert");
        vals.push_back(inv * dg0);
    }
    std::map<int, double> out;
    for (int p = -m / 2; p < m / 2; ++p) {
        GMatC acc(vals[0].rows, vals[0].cols);
        for (int s = 0; s < m; ++s)
            acc = acc + GMatC(std::polar(1.0 / m, -2 * M_PI * s * p / m) * vals[s]);
        out[p] = acc.gnorm();
    }
    return out;
}

}  // namespace hsl
