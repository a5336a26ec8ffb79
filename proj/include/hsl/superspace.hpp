#pragma once

#include <array>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hsl/grid.hpp"

namespace hsl {

struct SuperError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Coefficient rings. A ring R provides +, -, *, scalar multiplication by
// complex numbers, dz()/dzbar() (derivatives in the even variables),
// rnorm() (a sup-style magnitude) and is_zero() (exact structural zero,
// used to keep Grassmann elements sparse).
// ---------------------------------------------------------------------------

// constants: no even-variable dependence (DPW coefficient matrices)
struct Cnum {
    std::complex<double> v{0, 0};
    Cnum() = default;
    Cnum(std::complex<double> x) : v(x) {}
    Cnum(double x) : v(x) {}
    Cnum dz() const { return {}; }
    Cnum dzbar() const { return {}; }
    double rnorm() const { return std::abs(v); }
    bool is_zero() const { return v == std::complex<double>(0, 0); }
    friend Cnum operator+(Cnum a, Cnum b) { return {a.v + b.v}; }
    friend Cnum operator-(Cnum a, Cnum b) { return {a.v - b.v}; }
    friend Cnum operator-(Cnum a) { return {-a.v}; }
    friend Cnum operator*(Cnum a, Cnum b) { return {a.v * b.v}; }
    friend Cnum operator*(std::complex<double> s, Cnum a) { return {s * a.v}; }
};

// exact bivariate polynomials in (z, zbar) with complex coefficients
struct Poly2 {
    std::map<std::pair<int, int>, std::complex<double>> c;  // (deg_z, deg_zbar) -> coeff

    Poly2() = default;
    explicit Poly2(std::complex<double> v) {
        if (v != std::complex<double>(0, 0)) c[{0, 0}] = v;
    }
    static Poly2 monomial(int a, int b, std::complex<double> v = 1.0);

    Poly2 dz() const;
    Poly2 dzbar() const;
    double rnorm() const;  // max |coefficient|
    bool is_zero() const { return c.empty(); }
    void prune(double tol = 0);

    friend Poly2 operator+(const Poly2& a, const Poly2& b);
    friend Poly2 operator-(const Poly2& a, const Poly2& b);
    friend Poly2 operator-(const Poly2& a);
    friend Poly2 operator*(const Poly2& a, const Poly2& b);
    friend Poly2 operator*(std::complex<double> s, const Poly2& a);
};

// complex scalar fields on a grid; derivatives by central differences.
// A domain-free uniform constant doubles as the ring unit, so that Grassmann
// generators and numeric coefficients need no grid attached.
struct GridC {
    bool uniform = true;
    std::complex<double> k{0, 0};
    Field<std::complex<double>> f;

    GridC() = default;
    GridC(std::complex<double> v) : k(v) {}
    GridC(double v) : k(v) {}
    explicit GridC(Field<std::complex<double>> g) : uniform(false), f(std::move(g)) {}

    GridC dz() const { return uniform ? GridC{} : GridC{ddz(f)}; }
    GridC dzbar() const { return uniform ? GridC{} : GridC{ddzbar(f)}; }
    double rnorm() const { return uniform ? std::abs(k) : sup_norm(f); }
    bool is_zero() const { return uniform && k == std::complex<double>(0, 0); }

    friend GridC operator+(const GridC& a, const GridC& b);
    friend GridC operator-(const GridC& a, const GridC& b);
    friend GridC operator-(const GridC& a);
    friend GridC operator*(const GridC& a, const GridC& b);
    friend GridC operator*(std::complex<double> s, const GridC& a);
};

// ---------------------------------------------------------------------------
// Grassmann algebra over 6 odd generators: bit 0 = theta^1, bit 1 = theta^2,
// bits 2..5 = eta_1..eta_4 (constant odd parameters). Elements are sparse
// over the 64 subset masks; coefficients live in a ring R.
// ---------------------------------------------------------------------------

inline constexpr int kGrassGens = 6;
inline constexpr int kGrassMasks = 1 << kGrassGens;

// sign of merging subset a before subset b (0 if they overlap)
inline int grass_merge_sign(unsigned a, unsigned b) {
    if (a & b) return 0;
    int swaps = 0;
    for (int i = 0; i < kGrassGens; ++i)
        if (b & (1u << i)) {
            unsigned higher = a >> (i + 1);
            swaps += __builtin_popcount(higher);
        }
    return (swaps % 2) ? -1 : 1;
}

template <class R>
struct Grass {
    std::map<unsigned, R> c;  // mask -> coefficient, zero coefficients omitted

    Grass() = default;
    explicit Grass(const R& body) { set(0, body); }

    void set(unsigned mask, const R& v) {
        if (v.is_zero())
            c.erase(mask);
        else
            c[mask] = v;
    }
    R get(unsigned mask) const {
        auto it = c.find(mask);
        return it == c.end() ? R{} : it->second;
    }
    bool is_zero() const { return c.empty(); }

    // -1: not homogeneous, 0: even, 1: odd
    int parity() const {
        int p = -2;
        for (const auto& [m, v] : c) {
            const int q = __builtin_popcount(m) % 2;
            if (p == -2)
                p = q;
            else if (p != q)
                return -1;
        }
        return p == -2 ? 0 : p;
    }

    double gnorm() const {
        double m = 0;
        for (const auto& [mask, v] : c) m = std::max(m, v.rnorm());
        return m;
    }

    Grass dz() const {
        Grass out;
        for (const auto& [m, v] : c) out.set(m, v.dz());
        return out;
    }
    Grass dzbar() const {
        Grass out;
        for (const auto& [m, v] : c) out.set(m, v.dzbar());
        return out;
    }

    // left derivative with respect to generator g
    Grass gderiv(int g) const {
        Grass out;
        for (const auto& [m, v] : c)
            if (m & (1u << g)) {
                const int below = __builtin_popcount(m & ((1u << g) - 1));
                out.set(m & ~(1u << g), (below % 2) ? -v : v);
            }
        return out;
    }

    friend Grass operator+(const Grass& a, const Grass& b) {
        Grass out = a;
        for (const auto& [m, v] : b.c) out.set(m, out.get(m) + v);
        return out;
    }
    friend Grass operator-(const Grass& a, const Grass& b) {
        Grass out = a;
        for (const auto& [m, v] : b.c) out.set(m, out.get(m) - v);
        return out;
    }
    friend Grass operator-(const Grass& a) {
        Grass out;
        for (const auto& [m, v] : a.c) out.set(m, -v);
        return out;
    }
    friend Grass operator*(const Grass& a, const Grass& b) {
        Grass out;
        for (const auto& [ma, va] : a.c)
            for (const auto& [mb, vb] : b.c) {
                const int s = grass_merge_sign(ma, mb);
                if (!s) continue;
                const unsigned m = ma | mb;
                out.set(m, s > 0 ? out.get(m) + va * vb : out.get(m) - va * vb);
            }
        return out;
    }
    friend Grass operator*(std::complex<double> s, const Grass& a) {
        Grass out;
        for (const auto& [m, v] : a.c) out.set(m, s * v);
        return out;
    }
};

template <class R>
Grass<R> grass_gen(int g) {
    Grass<R> out;
    out.set(1u << g, R{1.0});
    return out;
}

// theta = theta^1 + i theta^2 and its conjugate
template <class R>
Grass<R> grass_theta() {
    Grass<R> out;
    out.set(1u, R{1.0});
    out.set(2u, R{std::complex<double>(0, 1)});
    return out;
}
template <class R>
Grass<R> grass_thetabar() {
    Grass<R> out;
    out.set(1u, R{1.0});
    out.set(2u, R{std::complex<double>(0, -1)});
    return out;
}

// D = d/dtheta - theta d/dz with d/dtheta = (d/dtheta^1 - i d/dtheta^2)/2,
// so that D(theta) = 1 and D(thetabar) = 0.
template <class R>
Grass<R> D_op(const Grass<R>& x) {
    const std::complex<double> mi(0, -1);
    return 0.5 * (x.gderiv(0) + mi * x.gderiv(1)) - grass_theta<R>() * x.dz();
}
template <class R>
Grass<R> Dbar_op(const Grass<R>& x) {
    const std::complex<double> pi(0, 1);
    return 0.5 * (x.gderiv(0) + pi * x.gderiv(1)) - grass_thetabar<R>() * x.dzbar();
}

// ---------------------------------------------------------------------------
// Vectors and matrices of Grassmann elements
// ---------------------------------------------------------------------------

template <class R>
using GVec = std::vector<Grass<R>>;

template <class R>
double gnorm(const GVec<R>& v) {
    double m = 0;
    for (const auto& x : v) m = std::max(m, x.gnorm());
    return m;
}

template <class R, class Fn>
GVec<R> vmap(const GVec<R>& v, Fn&& f) {
    GVec<R> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(f(x));
    return out;
}

template <class R>
GVec<R> operator+(const GVec<R>& a, const GVec<R>& b) {
    GVec<R> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}
template <class R>
GVec<R> operator-(const GVec<R>& a, const GVec<R>& b) {
    GVec<R> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}
// scalar (Grassmann) times vector, order-sensitive
template <class R>
GVec<R> operator*(const Grass<R>& s, const GVec<R>& v) {
    GVec<R> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
}
template <class R>
GVec<R> operator*(const GVec<R>& v, const Grass<R>& s) {
    GVec<R> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * s;
    return out;
}
template <class R>
GVec<R> operator*(std::complex<double> s, const GVec<R>& v) {
    GVec<R> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
    return out;
}

// bilinear (not hermitian) inner product; the factor order matters for odd
// arguments
template <class R>
Grass<R> sdot(const GVec<R>& a, const GVec<R>& b) {
    if (a.size() != b.size()) throw SuperError("sdot: dimension mismatch");
    Grass<R> out;
    for (size_t i = 0; i < a.size(); ++i) out = out + a[i] * b[i];
    return out;
}

template <class R>
struct GMat {
    int rows = 0, cols = 0;
    std::vector<Grass<R>> a;

    GMat() = default;
    GMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c) {}
    Grass<R>& at(int i, int j) { return a[size_t(i) * cols + j]; }
    const Grass<R>& at(int i, int j) const { return a[size_t(i) * cols + j]; }

    static GMat identity(int n) {
        GMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Grass<R>(R{1.0});
        return m;
    }
    static GMat from_numeric(const Eigen::MatrixXcd& b, unsigned mask = 0) {
        GMat m(int(b.rows()), int(b.cols()));
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) m.at(i, j).set(mask, R{b(i, j)});
        return m;
    }

    double gnorm() const {
        double m = 0;
        for (const auto& x : a) m = std::max(m, x.gnorm());
        return m;
    }

    friend GMat operator+(const GMat& x, const GMat& y) {
        GMat out = x;
        for (size_t k = 0; k < out.a.size(); ++k) out.a[k] = out.a[k] + y.a[k];
        return out;
    }
    friend GMat operator-(const GMat& x, const GMat& y) {
        GMat out = x;
        for (size_t k = 0; k < out.a.size(); ++k) out.a[k] = out.a[k] - y.a[k];
        return out;
    }
    friend GMat operator*(const GMat& x, const GMat& y) {
        if (x.cols != y.rows) throw SuperError("GMat: dimension mismatch");
        GMat out(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                if (x.at(i, k).is_zero()) continue;
                for (int j = 0; j < y.cols; ++j)
                    out.at(i, j) = out.at(i, j) + x.at(i, k) * y.at(k, j);
            }
        return out;
    }
    friend GMat operator*(std::complex<double> s, const GMat& x) {
        GMat out = x;
        for (auto& e : out.a) e = s * e;
        return out;
    }
};

template <class R, class Fn>
GMat<R> mmap(const GMat<R>& m, Fn&& f) {
    GMat<R> out(m.rows, m.cols);
    for (size_t k = 0; k < m.a.size(); ++k) out.a[k] = f(m.a[k]);
    return out;
}

// ---------------------------------------------------------------------------
// Superfields Phi = u + theta^1 psi_1 + theta^2 psi_2 + theta^1 theta^2 AuxF
// with values on the unit sphere of R^m (bilinear <.,.>)
// ---------------------------------------------------------------------------

template <class R>
struct SuperFieldData {
    GVec<R> u, psi1, psi2, auxF;
};

template <class R>
GVec<R> assemble_phi(const SuperFieldData<R>& d) {
    const Grass<R> t1 = grass_gen<R>(0), t2 = grass_gen<R>(1);
    return d.u + t1 * d.psi1 + t2 * d.psi2 + (t1 * t2) * d.auxF;
}

// components of X = X_0 + theta A + thetabar B + theta thetabar C in the
// complex odd coordinates; which in {0, 1, 2, 3} selects (X_0, A, B, C)
template <class R>
Grass<R> theta_component(const Grass<R>& x, int which) {
    // X = X_0 + theta^1 X_1 + theta^2 X_2 + theta^1 theta^2 X_12 with
    // A = (X_1 - i X_2)/2, B = (X_1 + i X_2)/2, C = (i/2) X_12
    const std::complex<double> iu(0, 1);
    Grass<R> x0, x1, x2, x12;
    for (const auto& [m, v] : x.c) {
        const unsigned eta = m & ~3u;
        switch (m & 3u) {
            case 0: x0.set(eta, v); break;
            case 1: x1.set(eta, v); break;
            case 2: x2.set(eta, v); break;
            case 3: x12.set(eta, v); break;
        }
    }
    switch (which) {
        case 0: return x0;
        case 1: return 0.5 * (x1 - iu * x2);
        case 2: return 0.5 * (x1 + iu * x2);
        case 3: return (0.5 * iu) * x12;
    }
    throw SuperError("theta_component: which must be 0..3");
}

template <class R>
GVec<R> theta_component(const GVec<R>& v, int which) {
    return vmap(v, [&](const Grass<R>& x) { return theta_component(x, which); });
}

// tangential projection of the flat derivative (sphere pull-back connection)
template <class R>
GVec<R> sphere_nabla_z(const GVec<R>& v, const GVec<R>& u) {
    const GVec<R> d = vmap(v, [](const Grass<R>& x) { return x.dz(); });
    return d - sdot(d, u) * u;
}
template <class R>
GVec<R> sphere_nabla_zbar(const GVec<R>& v, const GVec<R>& u) {
    const GVec<R> d = vmap(v, [](const Grass<R>& x) { return x.dzbar(); });
    return d - sdot(d, u) * u;
}

// Residuals of the component system: the map equation, the spinor equation
// and the algebraic constraint on the auxiliary field. Conventions (fixed by
// requiring exact equivalence with the superfield formulation):
//   psi = psi_1 - i psi_2,  psibar = psi_1 + i psi_2
//   r_map    = nabla_zbar u_z - 1/4 (psi <psi, u_zbar> + psibar <psibar, u_z>)
//   r_spinor = nabla_zbar psi - 1/4 <psibar, psi> psibar
//   r_aux    = AuxF - 1/(2i) <psi, psibar> u   (note 1/(2i) = -i/2)
template <class R>
struct ComponentResiduals {
    GVec<R> r_map, r_spinor, r_aux;
};

template <class R>
ComponentResiduals<R> superharmonic_component_residuals(const SuperFieldData<R>& d,
                                                        double constraint_tol = 1e-10) {
    const std::complex<double> iu(0, 1);
    Grass<R> one(R{1.0});
    if ((sdot(d.u, d.u) - one).gnorm() > constraint_tol)
        throw SuperError("superharmonic_component_residuals: u is not unit");
    if (sdot(d.psi1, d.u).gnorm() > constraint_tol ||
        sdot(d.psi2, d.u).gnorm() > constraint_tol)
        throw SuperError("superharmonic_component_residuals: psi is not tangent to the sphere");

    const GVec<R> psi = d.psi1 - GVec<R>(iu * d.psi2);
    const GVec<R> psibar = d.psi1 + GVec<R>(iu * d.psi2);
    const GVec<R> uz = vmap(d.u, [](const Grass<R>& x) { return x.dz(); });
    const GVec<R> uzbar = vmap(d.u, [](const Grass<R>& x) { return x.dzbar(); });

    ComponentResiduals<R> out;
    out.r_map = sphere_nabla_zbar(uz, d.u) -
                GVec<R>(0.25 * (psi * sdot(psi, uzbar) + psibar * sdot(psibar, uz)));
    out.r_spinor =
        sphere_nabla_zbar(psi, d.u) - GVec<R>(0.25 * (sdot(psibar, psi) * psibar));
    out.r_aux = d.auxF + GVec<R>((0.5 * iu) * (sdot(psi, psibar) * d.u));
    return out;
}

// left-hand side of the superfield equation DbarD Phi + <Dbar Phi, D Phi> Phi
template <class R>
GVec<R> superharmonic_phi_residual(const GVec<R>& phi) {
    const GVec<R> dphi = vmap(phi, [](const Grass<R>& x) { return D_op(x); });
    const GVec<R> dbphi = vmap(phi, [](const Grass<R>& x) { return Dbar_op(x); });
    const GVec<R> dbd = vmap(dphi, [](const Grass<R>& x) { return Dbar_op(x); });
    return dbd + sdot(dbphi, dphi) * phi;
}

// ---------------------------------------------------------------------------
// Super connections and graded curvature
// ---------------------------------------------------------------------------

template <class R>
struct SuperConnection {
    GMat<R> aD, aDbar, az, azbar;  // values on the frame (D, Dbar, d_z, d_zbar)
};

// the six graded curvature components of d alpha + 1/2 [alpha ^ alpha] on the
// frame pairs, in the order
//   (D, Dbar), (D, D), (Dbar, Dbar), (D, d_zbar), (Dbar, d_z), (d_z, d_zbar)
// using the structure relations [D, D] = -2 d_z, [Dbar, Dbar] = -2 d_zbar
// (all other frame brackets vanish). The pairs (D, d_z) and (Dbar, d_zbar)
// are omitted: the relations express them through (D, D) and (Dbar, Dbar)
// via the Bianchi identity, which is how the 8 naive pairs reduce to the
// 6-dimensional space of super 2-forms.
template <class R>
std::array<GMat<R>, 6> super_curvature(const SuperConnection<R>& al) {
    for (const auto* m : {&al.aD, &al.aDbar})
        for (const auto& e : m->a)
            if (e.parity() == 0 && !e.is_zero())
                throw SuperError("super_curvature: alpha(D), alpha(Dbar) must be odd");
    for (const auto* m : {&al.az, &al.azbar})
        for (const auto& e : m->a)
            if (e.parity() == 1) throw SuperError("super_curvature: alpha(d_z) must be even");

    auto Dm = [](const GMat<R>& m) {
        return mmap(m, [](const Grass<R>& x) { return D_op(x); });
    };
    auto Dbm = [](const GMat<R>& m) {
        return mmap(m, [](const Grass<R>& x) { return Dbar_op(x); });
    };
    auto dzm = [](const GMat<R>& m) {
        return mmap(m, [](const Grass<R>& x) { return x.dz(); });
    };
    auto dzbm = [](const GMat<R>& m) {
        return mmap(m, [](const Grass<R>& x) { return x.dzbar(); });
    };

    std::array<GMat<R>, 6> out;
    // odd-odd pairs: F(U,V) = U a(V) + V a(U) + a(U)a(V) + a(V)a(U) - a([U,V])
    out[0] = Dm(al.aDbar) + Dbm(al.aD) + al.aD * al.aDbar + al.aDbar * al.aD;
    out[1] = 2.0 * (Dm(al.aD) + al.aD * al.aD + al.az);
    out[2] = 2.0 * (Dbm(al.aDbar) + al.aDbar * al.aDbar + al.azbar);
    // odd-even pairs: F(U,V) = U a(V) - V a(U) + a(U)a(V) - a(V)a(U)
    out[3] = Dm(al.azbar) - dzbm(al.aD) + al.aD * al.azbar - al.azbar * al.aD;
    out[4] = Dbm(al.az) - dzm(al.aDbar) + al.aDbar * al.az - al.az * al.aDbar;
    // even-even pair
    out[5] = dzm(al.azbar) - dzbm(al.az) + al.az * al.azbar - al.azbar * al.az;
    return out;
}

// pull-back alpha = F^{-1} dF on the frame (D, Dbar, d_z, d_zbar); the caller
// supplies the inverse (for orthogonal frames the transpose, in general a
// Neumann series around the invertible body)
template <class R>
SuperConnection<R> pullback_connection(const GMat<R>& f, const GMat<R>& finv) {
    const GMat<R> check = finv * f - GMat<R>::identity(f.rows);
    if (check.gnorm() > 1e-10)
        throw SuperError("pullback_connection: finv is not an inverse of f");
    SuperConnection<R> out;
    out.aD = finv * mmap(f, [](const Grass<R>& x) { return D_op(x); });
    out.aDbar = finv * mmap(f, [](const Grass<R>& x) { return Dbar_op(x); });
    out.az = finv * mmap(f, [](const Grass<R>& x) { return x.dz(); });
    out.azbar = finv * mmap(f, [](const Grass<R>& x) { return x.dzbar(); });
    return out;
}

// ---------------------------------------------------------------------------
// lambda family: alpha(D)_lambda = alpha_0(D) + lambda^{-1} alpha_1(D),
// alpha(Dbar)_lambda = alpha_0(Dbar) + lambda alpha_1(Dbar), split by the
// involution xi -> S xi S with numeric S (Cartan decomposition of so(m))
// ---------------------------------------------------------------------------

template <class R>
GMat<R> involution_part(const GMat<R>& m, const Eigen::MatrixXd& s, int part) {
    GMat<R> out(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            const double sg = s(i, i) * s(j, j);  // S diagonal +-1
            const double w = part == 0 ? 0.5 * (1 + sg) : 0.5 * (1 - sg);
            if (w != 0) out.at(i, j) = std::complex<double>(w) * m.at(i, j);
        }
    return out;
}

// the Theorem's expression at a given lambda:
//   Dbar a(D)_l + D a(Dbar)_l + a(Dbar)_l a(D)_l + a(D)_l a(Dbar)_l
template <class R>
GMat<R> lambda_family_expression(const GMat<R>& aD, const GMat<R>& aDbar,
                                 const Eigen::MatrixXd& s, std::complex<double> lambda) {
    if (lambda == std::complex<double>(0, 0))
        throw SuperError("lambda_family_expression: lambda must be nonzero");
    const GMat<R> aDl = involution_part(aD, s, 0) + GMat<R>((1.0 / lambda) * involution_part(aD, s, 1));
    const GMat<R> aDbl = involution_part(aDbar, s, 0) + GMat<R>(lambda * involution_part(aDbar, s, 1));
    const auto Dm = [](const GMat<R>& m) {
        return mmap(m, [](const Grass<R>& x) { return D_op(x); });
    };
    const auto Dbm = [](const GMat<R>& m) {
        return mmap(m, [](const Grass<R>& x) { return Dbar_op(x); });
    };
    return Dbm(aDl) + Dm(aDbl) + aDbl * aDl + aDl * aDbl;
}

// Laurent coefficient of power p (p in {-1, 0, 1}; 2 aliases the rest) of the
// family expression, extracted by DFT over the 4th roots of unity
template <class R>
GMat<R> lambda_power_component(const GMat<R>& aD, const GMat<R>& aDbar,
                               const Eigen::MatrixXd& s, int p) {
    GMat<R> acc(aD.rows, aD.cols);
    for (int m = 0; m < 4; ++m) {
        const std::complex<double> lm = std::polar(1.0, 2 * M_PI * m / 4);
        const std::complex<double> w = std::polar(0.25, -2 * M_PI * m * p / 4);
        acc = acc + GMat<R>(w * lambda_family_expression(aD, aDbar, s, lm));
    }
    return acc;
}

// the displayed superharmonicity obstruction: Dbar a_1(D) + [a_0(Dbar), a_1(D)]
// (graded bracket; both family legs contribute to the lambda^{-1} power)
template <class R>
GMat<R> superharmonicity_expression(const GMat<R>& aD, const GMat<R>& aDbar,
                                    const Eigen::MatrixXd& s) {
    const GMat<R> a1D = involution_part(aD, s, 1);
    const GMat<R> a0Db = involution_part(aDbar, s, 0);
    return mmap(a1D, [](const Grass<R>& x) { return Dbar_op(x); }) + a0Db * a1D + a1D * a0Db;
}

// ---------------------------------------------------------------------------
// DPW theta-component integration. The potential mu(D) = mu_0(D) + theta
// mu_theta(D) is given by its lambda-Laurent coefficients (z-independent,
// hence holomorphic); Dg = g mu(D) reduces to g_theta = g_0 mu_0(D) and the
// z-ODE g_0^{-1} dg_0/dz = -((mu_0(D))^2 + mu_theta(D)), integrated by RK4
// along the real axis z = x in [0, zmax].
// ---------------------------------------------------------------------------

using GMatC = GMat<Cnum>;
using LaurentGMat = std::map<int, GMatC>;  // lambda power -> coefficient

struct DpwSolution {
    std::vector<double> z;       // sample points
    std::vector<GMatC> g0;       // g_0(z_k)
    std::vector<GMatC> gtheta;   // g_theta(z_k) = g_0 mu_0(D)
    double d_residual = 0;       // sup_k |Dg - g mu(D)| with d_z by central differences
};

GMatC laurent_eval(const LaurentGMat& m, std::complex<double> lambda, int n);

DpwSolution dpw_integrate(const LaurentGMat& mu0, const LaurentGMat& mu_theta, int n,
                          std::complex<double> lambda, double zmax = 1.0, int steps = 64);

// Laurent powers of g_0^{-1} d_z g_0 at z = zmax, extracted from 8 unit-circle
// lambda samples; key = power, value = coefficient magnitude
std::map<int, double> dpw_laurent_scan(const LaurentGMat& mu0, const LaurentGMat& mu_theta,
                                       int n, double zmax = 1.0, int steps = 64);

}  // namespace hsl
