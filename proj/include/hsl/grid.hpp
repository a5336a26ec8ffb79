#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "hsl/quaternion.hpp"
#include "hsl/octonion.hpp"

namespace hsl {

struct GridError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rectangular parameter domain. On a periodic axis the samples cover one
// period, i.e. the period is n*h and index n wraps to 0.
struct GridDomain {
    int nx = 0, ny = 0;
    double hx = 0, hy = 0;
    double x0 = 0, y0 = 0;
    bool per_x = false, per_y = false;

    double x(int i) const { return x0 + i * hx; }
    double y(int j) const { return y0 + j * hy; }
    bool operator==(const GridDomain&) const = default;
};

// Uniform non-periodic domain [xa,xb] x [ya,yb] with n samples per axis.
inline GridDomain box_domain(double xa, double xb, double ya, double yb, int n) {
    return {n, n, (xb - xa) / (n - 1), (yb - ya) / (n - 1), xa, ya, false, false};
}

// Doubly periodic domain [x0, x0+px) x [y0, y0+py) with n samples per axis.
inline GridDomain periodic_domain(double px, double py, int n, double x0 = 0, double y0 = 0) {
    return {n, n, px / n, py / n, x0, y0, true, true};
}

inline double fnorm(double v) { return std::abs(v); }
inline double fnorm(const std::complex<double>& v) { return std::abs(v); }
inline double fnorm(const Quaternion& v) { return v.norm(); }
inline double fnorm(const Octonion& v) { return v.norm(); }
template <class Derived>
double fnorm(const Eigen::MatrixBase<Derived>& v) { return v.norm(); }

// Sampled map Omega -> T with a validity margin: stencil application shrinks
// the evaluation region by one ring per non-periodic axis.
template <class T>
struct Field {
    GridDomain dom;
    int mx = 0, my = 0;  // margin per axis (0 on periodic axes)
    std::vector<T> v;

    Field() = default;
    explicit Field(const GridDomain& d, const T& init = T{}) : dom(d), v(size_t(d.nx) * d.ny, init) {}

    T& at(int i, int j) { return v[size_t(i) * dom.ny + j]; }
    const T& at(int i, int j) const { return v[size_t(i) * dom.ny + j]; }

    int ilo() const { return dom.per_x ? 0 : mx; }
    int ihi() const { return dom.per_x ? dom.nx : dom.nx - mx; }
    int jlo() const { return dom.per_y ? 0 : my; }
    int jhi() const { return dom.per_y ? dom.ny : dom.ny - my; }

    // visit the valid evaluation region
    template <class F>
    void for_valid(F&& f) const {
        for (int i = ilo(); i < ihi(); ++i)
            for (int j = jlo(); j < jhi(); ++j) f(i, j);
    }
};

template <class T>
Field<T> make_field(const GridDomain& dom, const std::function<T(double, double)>& f) {
    Field<T> out(dom);
    for (int i = 0; i < dom.nx; ++i)
        for (int j = 0; j < dom.ny; ++j) out.at(i, j) = f(dom.x(i), dom.y(j));
    return out;
}

template <class T, class F>
Field<T> sample(const GridDomain& dom, F&& f) {
    Field<T> out(dom);
    for (int i = 0; i < dom.nx; ++i)
        for (int j = 0; j < dom.ny; ++j) out.at(i, j) = f(dom.x(i), dom.y(j));
    return out;
}

template <class T, class U, class F>
auto zip_map(const Field<T>& a, const Field<U>& b, F&& f) {
    using R = decltype(f(a.v[0], b.v[0]));
    Field<R> out(a.dom);
    out.mx = std::max(a.mx, b.mx);
    out.my = std::max(a.my, b.my);
    for (size_t k = 0; k < a.v.size(); ++k) out.v[k] = f(a.v[k], b.v[k]);
    return out;
}

template <class T, class F>
auto map_field(const Field<T>& a, F&& f) {
    using R = decltype(f(a.v[0]));
    Field<R> out(a.dom);
    out.mx = a.mx;
    out.my = a.my;
    for (size_t k = 0; k < a.v.size(); ++k) out.v[k] = f(a.v[k]);
    return out;
}

namespace detail {
inline int wrap(int i, int n) { return (i % n + n) % n; }
}

// Central difference d/dx, O(h^2). Non-periodic axes shrink the region.
template <class T>
Field<T> ddx(const Field<T>& f) {
    if (f.dom.nx < 3 || f.dom.ny < 3) throw GridError("ddx: domain too small (<3 points per axis)");
    Field<T> out(f.dom);
    out.mx = f.dom.per_x ? 0 : f.mx + 1;
    out.my = f.my;
    const double s = 1.0 / (2.0 * f.dom.hx);
    out.for_valid([&](int i, int j) {
        const int ip = detail::wrap(i + 1, f.dom.nx), im = detail::wrap(i - 1, f.dom.nx);
        out.at(i, j) = s * (f.at(ip, j) - f.at(im, j));
    });
    return out;
}

template <class T>
Field<T> ddy(const Field<T>& f) {
    if (f.dom.nx < 3 || f.dom.ny < 3) throw GridError("ddy: domain too small (<3 points per axis)");
    Field<T> out(f.dom);
    out.mx = f.mx;
    out.my = f.dom.per_y ? 0 : f.my + 1;
    const double s = 1.0 / (2.0 * f.dom.hy);
    out.for_valid([&](int i, int j) {
        const int jp = detail::wrap(j + 1, f.dom.ny), jm = detail::wrap(j - 1, f.dom.ny);
        out.at(i, j) = s * (f.at(i, jp) - f.at(i, jm));
    });
    return out;
}

// 5-point Laplacian, O(h^2).
template <class T>
Field<T> laplacian(const Field<T>& f) {
    if (f.dom.nx < 3 || f.dom.ny < 3)
        throw GridError("laplacian: domain too small (<3 points per axis)");
    Field<T> out(f.dom);
    out.mx = f.dom.per_x ? 0 : f.mx + 1;
    out.my = f.dom.per_y ? 0 : f.my + 1;
    const double sx = 1.0 / (f.dom.hx * f.dom.hx), sy = 1.0 / (f.dom.hy * f.dom.hy);
    out.for_valid([&](int i, int j) {
        const int ip = detail::wrap(i + 1, f.dom.nx), im = detail::wrap(i - 1, f.dom.nx);
        const int jp = detail::wrap(j + 1, f.dom.ny), jm = detail::wrap(j - 1, f.dom.ny);
        out.at(i, j) = sx * (f.at(ip, j) - 2.0 * f.at(i, j) + f.at(im, j)) +
                       sy * (f.at(i, jp) - 2.0 * f.at(i, j) + f.at(i, jm));
    });
    return out;
}

// d/dz = (d/dx - i d/dy)/2 and d/dzbar for complex-valued fields.
template <class T>
Field<T> ddz(const Field<T>& f) {
    const Field<T> fx = ddx(f), fy = ddy(f);
    const std::complex<double> mi(0, -1);
    return zip_map(fx, fy, [&](const T& a, const T& b) { return T(0.5 * (a + mi * b)); });
}

template <class T>
Field<T> ddzbar(const Field<T>& f) {
    const Field<T> fx = ddx(f), fy = ddy(f);
    const std::complex<double> pi_(0, 1);
    return zip_map(fx, fy, [&](const T& a, const T& b) { return T(0.5 * (a + pi_ * b)); });
}

template <class T>
double sup_norm(const Field<T>& f) {
    double m = 0;
    f.for_valid([&](int i, int j) { m = std::max(m, fnorm(f.at(i, j))); });
    return m;
}

// Harmonic-map tension for round-sphere targets over a flat domain:
// tau(n) = Lap(n) + (|n_x|^2 + |n_y|^2) n, followed by a tangential
// projection that removes the O(h^2) normal component of the stencil.
// Zero iff n is harmonic.
template <class V>
Field<V> tension_sphere(const Field<V>& n, double unit_tol = 1e-8) {
    n.for_valid([&](int i, int j) {
        if (std::abs(fnorm(n.at(i, j)) - 1.0) > unit_tol)
            throw GridError("tension_sphere: input is not unit pointwise");
    });
    Field<V> lap = laplacian(n);
    const Field<V> nx = ddx(n), ny = ddy(n);
    Field<V> out = lap;
    out.mx = std::max({lap.mx, nx.mx, ny.mx});
    out.my = std::max({lap.my, nx.my, ny.my});
    out.for_valid([&](int i, int j) {
        const double e = fnorm(nx.at(i, j)) * fnorm(nx.at(i, j)) +
                         fnorm(ny.at(i, j)) * fnorm(ny.at(i, j));
        V t = lap.at(i, j) + e * n.at(i, j);
        t -= n.at(i, j).dot(t) * n.at(i, j);
        out.at(i, j) = t;
    });
    return out;
}

// Lie-algebra-valued connection A = A_x dx + A_y dy given by coefficient
// fields of square matrices.
template <class M>
struct Connection {
    Field<M> ax, ay;
};

// Discrete curvature: coefficient of dx^dy in dA + [A_x, A_y] dx^dy.
template <class M>
Field<M> curvature_residual(const Connection<M>& a) {
    if (a.ax.v.size() && a.ay.v.size() && a.ax.v[0].rows() != a.ay.v[0].rows())
        throw GridError("curvature_residual: mismatched Lie algebra dimensions");
    const Field<M> dxay = ddx(a.ay), dyax = ddy(a.ax);
    Field<M> out = dxay;
    out.mx = std::max({dxay.mx, dyax.mx, a.ax.mx, a.ay.mx});
    out.my = std::max({dxay.my, dyax.my, a.ax.my, a.ay.my});
    out.for_valid([&](int i, int j) {
        const M& x = a.ax.at(i, j);
        const M& y = a.ay.at(i, j);
        out.at(i, j) = dxay.at(i, j) - dyax.at(i, j) + x * y - y * x;
    });
    return out;
}

struct ConvergenceOrder {
    double order = 0;
    bool exact = false;  // all residuals at rounding level
};

// Least-squares slope of log(residual) against log(h).
ConvergenceOrder convergence_order(const std::vector<std::pair<double, double>>& levels,
                                   double exact_tol = 1e-12);

}  // namespace hsl
