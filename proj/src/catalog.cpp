#include "hsl/catalog.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hsl {

namespace {

using Eigen::VectorXd;
using json = nlohmann::json;

VectorXd vec4(const Quaternion& q) { return q.vec(); }

VectorXd vec3(double a, double b, double c) {
    VectorXd v(3);
    v << a, b, c;
    return v;
}

// Isothermal latitude for the torus of revolution with R = 2, r = 1:
// the quadrature w(v) = Integral dv/(2 + cos v) = (2/sqrt 3) atan(tan(v/2)/sqrt 3)
// inverts in closed form to v(w) = 2 atan(sqrt 3 tan(sqrt 3 w / 2)), continued
// across the tangent branch points so that v is smooth and increasing.
double torus_latitude(double w) {
    const double s = std::sqrt(3.0) * w / 2.0;
    const double n = std::round(s / M_PI);
    return 2.0 * (std::atan(std::sqrt(3.0) * std::tan(s - n * M_PI)) + n * M_PI);
}

std::vector<CatalogEntry> build_entries() {
    std::vector<CatalogEntry> es;

    {
        CatalogEntry e;
        e.name = "lagrangian_plane";
        e.dim = 4;
        e.conformal = e.lagrangian = e.special_lagrangian = e.hsl = true;
        e.notes = "X = x + y j: flat Lagrangian plane span{1, j}; beta == 0.";
        e.eval = [](double x, double y) { return vec4({x, 0, y, 0}); };
        e.eval_dx = [](double, double) { return vec4(Quaternion::one()); };
        e.eval_dy = [](double, double) { return vec4(Quaternion::j()); };
        e.domain = [](int n) { return box_domain(-1, 1, -1, 1, n); };
        es.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "clifford_torus";
        e.dim = 4;
        e.conformal = e.lagrangian = e.hsl = true;
        e.notes =
            "X = (e^{ix} + e^{iy} j)/sqrt 2: conformal (|X_x| = |X_y| = 1/sqrt 2, "
            "orthogonal), Lagrangian with beta = x + y + pi (linear, so harmonic, "
            "so HSL but not special Lagrangian).";
        e.eval = [](double x, double y) {
            return vec4(Quaternion::from_c2(std::polar(1.0, x), std::polar(1.0, y)) /
                        std::sqrt(2.0));
        };
        e.eval_dx = [](double x, double) {
            return vec4(Quaternion::from_c2(std::complex<double>(0, 1) * std::polar(1.0, x), 0) /
                        std::sqrt(2.0));
        };
        e.eval_dy = [](double, double y) {
            return vec4(Quaternion::from_c2(0, std::complex<double>(0, 1) * std::polar(1.0, y)) /
                        std::sqrt(2.0));
        };
        // open fundamental rectangle: beta winds around the periodic directions,
        // so the angle is unwrapped on a box rather than on the torus itself
        e.domain = [](int n) { return box_domain(0, 2 * M_PI, 0, 2 * M_PI, n); };
        es.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "lagrangian_catenoid";
        e.dim = 4;
        e.conformal = e.lagrangian = e.special_lagrangian = e.hsl = true;
        e.notes =
            "X = cosh y e^{ix} + sinh y e^{-ix} j: |X_x|^2 = |X_y|^2 = cosh 2y, "
            "<X_x, X_y> = 0; beta == pi/2 (special Lagrangian).";
        e.eval = [](double x, double y) {
            return vec4(Quaternion::from_c2(std::cosh(y) * std::polar(1.0, x),
                                            std::sinh(y) * std::polar(1.0, -x)));
        };
        e.eval_dx = [](double x, double y) {
            const std::complex<double> iu(0, 1);
            return vec4(Quaternion::from_c2(iu * std::cosh(y) * std::polar(1.0, x),
                                            -iu * std::sinh(y) * std::polar(1.0, -x)));
        };
        e.eval_dy = [](double x, double y) {
            return vec4(Quaternion::from_c2(std::sinh(y) * std::polar(1.0, x),
                                            std::cosh(y) * std::polar(1.0, -x)));
        };
        e.domain = [](int n) { return box_domain(0, 2 * M_PI, -1, 1, n); };
        es.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "complex_line";
        e.dim = 4;
        e.conformal = true;
        e.notes = "X = x + i y: complex line, rho == i constant (harmonic), not Lagrangian.";
        e.eval = [](double x, double y) { return vec4({x, y, 0, 0}); };
        e.eval_dx = [](double, double) { return vec4(Quaternion::one()); };
        e.eval_dy = [](double, double) { return vec4(Quaternion::i()); };
        e.domain = [](int n) { return box_domain(-1, 1, -1, 1, n); };
        es.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "cmc_cylinder";
        e.dim = 3;
        e.conformal = e.cmc = true;
        e.notes = "X = (cos x, sin x, y) in Im H: unit cylinder, Gauss map (cos x, sin x, 0) harmonic.";
        e.eval = [](double x, double y) { return vec3(std::cos(x), std::sin(x), y); };
        e.eval_dx = [](double x, double) { return vec3(-std::sin(x), std::cos(x), 0); };
        e.eval_dy = [](double, double) { return vec3(0, 0, 1); };
        e.domain = [](int n) { return box_domain(0, 2 * M_PI, -1, 1, n); };
        es.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "round_sphere";
        e.dim = 3;
        e.conformal = e.cmc = true;
        e.notes =
            "Stereographic X = (2x, 2y, x^2 + y^2 - 1)/(x^2 + y^2 + 1): round unit "
            "sphere, Gauss map the identity of S^2 (harmonic).";
        e.eval = [](double x, double y) {
            const double d = x * x + y * y + 1.0;
            return vec3(2 * x / d, 2 * y / d, (x * x + y * y - 1.0) / d);
        };
        e.eval_dx = [](double x, double y) {
            const double d = x * x + y * y + 1.0;
            return vec3(2 * (1 + y * y - x * x) / (d * d), -4 * x * y / (d * d),
                        4 * x / (d * d));
        };
        e.eval_dy = [](double x, double y) {
            const double d = x * x + y * y + 1.0;
            return vec3(-4 * x * y / (d * d), 2 * (1 + x * x - y * y) / (d * d),
                        4 * y / (d * d));
        };
        e.domain = [](int n) { return box_domain(-1, 1, -1, 1, n); };
        es.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "torus_of_revolution";
        e.dim = 3;
        e.conformal = true;
        e.notes =
            "Torus R = 2, r = 1 in isothermal coordinates (x, w), latitude "
            "v(w) = 2 atan(sqrt 3 tan(sqrt 3 w/2)) inverting w = Integral dv/(2 + cos v); "
            "both speeds equal 2 + cos v. Non-CMC: negative control for Gauss tension.";
        e.eval = [](double x, double w) {
            const double v = torus_latitude(w);
            const double s = 2.0 + std::cos(v);
            return vec3(s * std::cos(x), s * std::sin(x), std::sin(v));
        };
        e.eval_dx = [](double x, double w) {
            const double s = 2.0 + std::cos(torus_latitude(w));
            return vec3(-s * std::sin(x), s * std::cos(x), 0);
        };
        e.eval_dy = [](double x, double w) {
            // dv/dw = 2 + cos v (inverse of the defining quadrature)
            const double v = torus_latitude(w);
            const double vw = 2.0 + std::cos(v);
            return vec3(-std::sin(v) * vw * std::cos(x), -std::sin(v) * vw * std::sin(x),
                        std::cos(v) * vw);
        };
        e.domain = [](int n) {
            const double wp = M_PI / std::sqrt(3.0);
            return box_domain(0, 2 * M_PI, -wp, wp, n);
        };
        es.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "octonion_clifford";
        e.dim = 8;
        e.conformal = e.lagrangian = e.hsl = e.rho_harmonic = true;
        e.notes =
            "Clifford torus embedded via H < O (span{e0..e3}); the left Gauss map "
            "agrees with the quaternionic one, hence rho-harmonic.";
        e.eval = [](double x, double y) {
            const Quaternion q =
                Quaternion::from_c2(std::polar(1.0, x), std::polar(1.0, y)) / std::sqrt(2.0);
            return Octonion::from_quaternion(q).vec();
        };
        e.eval_dx = [](double x, double) {
            const Quaternion q = Quaternion::from_c2(
                std::complex<double>(0, 1) * std::polar(1.0, x), 0) / std::sqrt(2.0);
            return Octonion::from_quaternion(q).vec();
        };
        e.eval_dy = [](double, double y) {
            const Quaternion q = Quaternion::from_c2(
                0, std::complex<double>(0, 1) * std::polar(1.0, y)) / std::sqrt(2.0);
            return Octonion::from_quaternion(q).vec();
        };
        e.domain = [](int n) { return box_domain(0, 2 * M_PI, 0, 2 * M_PI, n); };
        es.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "nonharmonic_rotor";
        e.dim = 4;
        e.frame_only = true;
        e.notes =
            "Frame-only entry p = e^{i x^2} (rotor field, no immersion): the circle "
            "angle 2x^2 has Laplacian 4, so the extended flatness fails at the "
            "analytic scale 4. Negative control.";
        e.eval = [](double x, double) {
            return vec4({std::cos(x * x), std::sin(x * x), 0, 0});
        };
        e.domain = [](int n) { return box_domain(-1, 1, -1, 1, n); };
        es.push_back(e);
    }
    return es;
}

const std::vector<CatalogEntry>& entries() {
    static const std::vector<CatalogEntry> es = build_entries();
    return es;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> ns;
        for (const auto& e : entries()) ns.push_back(e.name);
        return ns;
    }();
    return names;
}

CatalogEntry builtin(const std::string& name) {
    for (const auto& e : entries())
        if (e.name == name) return e;
    std::ostringstream os;
    os << "unknown catalog entry '" << name << "'; available:";
    for (const auto& n : builtin_names()) os << ' ' << n;
    throw CatalogError(os.str());
}

Field<Eigen::VectorXd> sample_entry(const CatalogEntry& e, int n) {
    return sample<Eigen::VectorXd>(e.domain(n), e.eval);
}

Quaternion to_quaternion(const Eigen::VectorXd& v) {
    if (v.size() == 3) return {0, v[0], v[1], v[2]};
    if (v.size() == 4) return {v[0], v[1], v[2], v[3]};
    throw CatalogError("to_quaternion: value dimension must be 3 or 4");
}

Octonion to_octonion(const Eigen::VectorXd& v) {
    if (v.size() == 8) return Octonion::from_vec(v);
    return Octonion::from_quaternion(to_quaternion(v));
}

Field<Quaternion> quaternion_field(const Field<Eigen::VectorXd>& f) {
    return map_field(f, [](const Eigen::VectorXd& v) { return to_quaternion(v); });
}

Field<Octonion> octonion_field(const Field<Eigen::VectorXd>& f) {
    return map_field(f, [](const Eigen::VectorXd& v) { return to_octonion(v); });
}

void save_grid(const std::string& path, const Field<Eigen::VectorXd>& f, int dim,
               const std::string& subject) {
    json doc;
    doc["schema"] =
        "values is a flat row-major array, y fastest: entry (i,j) component c at "
        "index (i*ny + j)*dim + c";
    doc["dim"] = dim;
    doc["nx"] = f.dom.nx;
    doc["ny"] = f.dom.ny;
    doc["hx"] = f.dom.hx;
    doc["hy"] = f.dom.hy;
    doc["x0"] = f.dom.x0;
    doc["y0"] = f.dom.y0;
    doc["periodic"] = {f.dom.per_x, f.dom.per_y};
    json vals = json::array();
    for (const auto& v : f.v) {
        if (v.size() != dim) throw CatalogError("save_grid: value dimension mismatch");
        for (int c = 0; c < dim; ++c) vals.push_back(v[c]);
    }
    doc["values"] = std::move(vals);
    doc["metadata"] = json::object();
    if (!subject.empty()) doc["metadata"]["subject"] = subject;
    std::ofstream os(path);
    if (!os) throw CatalogError("save_grid: cannot open " + path);
    os << doc.dump(1) << '\n';
}

Field<Eigen::VectorXd> load_grid(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw CatalogError("load_grid: cannot open " + path);
    json doc;
    try {
        is >> doc;
    } catch (const json::exception& ex) {
        throw CatalogError(std::string("load_grid: invalid JSON: ") + ex.what());
    }
    const int dim = doc.at("dim").get<int>();
    if (dim != 3 && dim != 4 && dim != 8)
        throw CatalogError("load_grid: unsupported dimension " + std::to_string(dim) +
                           " (expected 3, 4 or 8)");
    GridDomain dom;
    dom.nx = doc.at("nx").get<int>();
    dom.ny = doc.at("ny").get<int>();
    dom.hx = doc.at("hx").get<double>();
    dom.hy = doc.at("hy").get<double>();
    dom.x0 = doc.value("x0", 0.0);
    dom.y0 = doc.value("y0", 0.0);
    const auto per = doc.at("periodic");
    dom.per_x = per.at(0).get<bool>();
    dom.per_y = per.at(1).get<bool>();
    if (dom.nx <= 0 || dom.ny <= 0 || dom.hx <= 0 || dom.hy <= 0)
        throw CatalogError("load_grid: nx, ny, hx, hy must be positive");

    const auto& vals = doc.at("values");
    const size_t expect = size_t(dom.nx) * dom.ny * dim;
    if (vals.size() != expect)
        throw CatalogError("load_grid: values length " + std::to_string(vals.size()) +
                           " does not match nx*ny*dim = " + std::to_string(expect));
    Field<Eigen::VectorXd> f(dom, Eigen::VectorXd(dim));
    for (size_t k = 0; k < f.v.size(); ++k) {
        Eigen::VectorXd v(dim);
        for (int c = 0; c < dim; ++c) {
            const auto& entry = vals.at(k * dim + c);
            if (!entry.is_number())
                throw CatalogError("load_grid: non-numeric entry at flat index " +
                                   std::to_string(k * dim + c));
            const double x = entry.get<double>();
            if (!std::isfinite(x))
                throw CatalogError("load_grid: non-finite entry at flat index " +
                                   std::to_string(k * dim + c));
            v[c] = x;
        }
        f.v[k] = v;
    }
    return f;
}

}  // namespace hsl
