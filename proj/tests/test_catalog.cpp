#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "hsl/catalog.hpp"

using namespace hsl;
using Eigen::VectorXd;

TEST_CASE("builtin retrieval and spot values") {
    CHECK(builtin_names().size() == 9);
    CHECK_THROWS_AS(builtin("no_such_surface"), CatalogError);
    try {
        builtin("no_such_surface");
    } catch (const CatalogError& e) {
        CHECK(std::string(e.what()).find("clifford_torus") != std::string::npos);
    }

    const auto ct = builtin("clifford_torus");
    const VectorXd p = ct.eval(0, 0);
    CHECK(p.size() == 4);
    CHECK(p[0] == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(p[1] == doctest::Approx(0.0));
    CHECK(p[2] == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(p[3] == doctest::Approx(0.0));

    const auto cat = builtin("lagrangian_catenoid");
    for (double x : {0.0, 0.7, 2.0}) {
        const VectorXd q = cat.eval(x, 0);
        CHECK(q[0] == doctest::Approx(std::cos(x)));
        CHECK(q[1] == doctest::Approx(std::sin(x)));
        CHECK(std::abs(q[2]) < 1e-15);
        CHECK(std::abs(q[3]) < 1e-15);
    }

    const auto oc = builtin("octonion_clifford");
    CHECK(oc.dim == 8);
    const VectorXd o = oc.eval(0.3, 0.9);
    const VectorXd h = ct.eval(0.3, 0.9);
    for (int c = 0; c < 4; ++c) CHECK(o[c] == h[c]);
    for (int c = 4; c < 8; ++c) CHECK(o[c] == 0.0);

    CHECK(builtin("nonharmonic_rotor").frame_only);
    CHECK(!builtin("clifford_torus").frame_only);
}

TEST_CASE("torus of revolution is isothermal") {
    const auto t = builtin("torus_of_revolution");
    const GridDomain dom = t.domain(16);
    // 4th-order stencil in w on the analytic evaluator: truncation ~ h^4
    const double h = 1e-2;
    auto dw = [&](double x, double w) {
        return VectorXd(((-t.eval(x, w + 2 * h) + 8 * t.eval(x, w + h) - 8 * t.eval(x, w - h) +
                          t.eval(x, w - 2 * h)) /
                         (12 * h))
                            .eval());
    };
    auto dx = [&](double x, double w) {
        return VectorXd(((-t.eval(x + 2 * h, w) + 8 * t.eval(x + h, w) - 8 * t.eval(x - h, w) +
                          t.eval(x - 2 * h, w)) /
                         (12 * h))
                            .eval());
    };
    double worst = 0;
    for (int i = 0; i < dom.nx; ++i)
        for (int j = 2; j < dom.ny - 2; ++j) {
            const double x = dom.x(i), w = dom.y(j);
            const VectorXd xu = dx(x, w), xw = dw(x, w);
            const double r =
                (std::abs(xu.norm() - xw.norm()) + std::abs(xu.dot(xw))) / xu.squaredNorm();
            worst = std::max(worst, r);
        }
    CHECK(worst < 1e-6);

    // latitude continuation is smooth across the tangent branch points
    const GridDomain fine = t.domain(512);
    double jump = 0;
    for (int j = 1; j < fine.ny; ++j)
        jump = std::max(jump, (t.eval(0, fine.y(j)) - t.eval(0, fine.y(j - 1))).norm());
    CHECK(jump < 4.0 * fine.hy);
    // covers the full latitude range: z = sin v hits both poles of the tube
    CHECK(t.eval(0, 0)[0] == doctest::Approx(3.0));            // outer equator
    CHECK(t.eval(0, M_PI / std::sqrt(3.0))[0] == doctest::Approx(1.0));  // inner equator
}

TEST_CASE("analytic derivatives match difference quotients") {
    const double h = 1e-2;
    for (const auto& name : builtin_names()) {
        const auto e = builtin(name);
        if (!e.eval_dx) continue;
        CAPTURE(name);
        const GridDomain dom = e.domain(7);
        for (int i = 2; i < dom.nx - 2; ++i)
            for (int j = 2; j < dom.ny - 2; ++j) {
                const double x = dom.x(i), y = dom.y(j);
                const VectorXd fx = (-e.eval(x + 2 * h, y) + 8 * e.eval(x + h, y) -
                                     8 * e.eval(x - h, y) + e.eval(x - 2 * h, y)) /
                                    (12 * h);
                const VectorXd fy = (-e.eval(x, y + 2 * h) + 8 * e.eval(x, y + h) -
                                     8 * e.eval(x, y - h) + e.eval(x, y - 2 * h)) /
                                    (12 * h);
                CHECK((fx - e.eval_dx(x, y)).norm() < 1e-6);
                CHECK((fy - e.eval_dy(x, y)).norm() < 1e-6);
            }
    }
}

TEST_CASE("value conversions") {
    VectorXd v3(3), v4(4), v5(5);
    v3 << 1, 2, 3;
    v4 << 1, 2, 3, 4;
    v5 << 1, 2, 3, 4, 5;
    CHECK(to_quaternion(v3).w == 0.0);
    CHECK(to_quaternion(v3).y == 2.0);
    CHECK(to_quaternion(v4).w == 1.0);
    CHECK_THROWS_AS(to_quaternion(v5), CatalogError);
    CHECK(to_octonion(v3).c[2] == 2.0);
    CHECK(to_octonion(v4).c[3] == 4.0);
}

TEST_CASE("grid file round trip") {
    const auto e = builtin("clifford_torus");
    const auto f = sample_entry(e, 12);
    const std::string path = "test_gridfile_roundtrip.json";
    save_grid(path, f, e.dim, e.name);
    const auto g = load_grid(path);
    REQUIRE(g.dom == f.dom);
    REQUIRE(g.v.size() == f.v.size());
    for (size_t k = 0; k < f.v.size(); ++k)
        for (int c = 0; c < 4; ++c) CHECK(g.v[k][c] == f.v[k][c]);  // bit-identical
    std::remove(path.c_str());
}

TEST_CASE("grid file validation") {
    auto write = [](const std::string& path, const std::string& body) {
        std::ofstream os(path);
        os << body;
    };
    const std::string p = "test_gridfile_bad.json";

    write(p, R"({"dim":4,"nx":2,"ny":2,"hx":0.1,"hy":0.1,"periodic":[false,false],
                 "values":[1,2,3]})");
    CHECK_THROWS_WITH_AS(load_grid(p), doctest::Contains("does not match"), CatalogError);

    write(p, R"({"dim":5,"nx":1,"ny":1,"hx":0.1,"hy":0.1,"periodic":[false,false],
                 "values":[1,2,3,4,5]})");
    CHECK_THROWS_WITH_AS(load_grid(p), doctest::Contains("unsupported dimension"), CatalogError);

    write(p, R"({"dim":3,"nx":1,"ny":1,"hx":0.1,"hy":0.1,"periodic":[false,false],
                 "values":[1,2,null]})");
    CHECK_THROWS_AS(load_grid(p), CatalogError);

    write(p, "not json at all");
    CHECK_THROWS_WITH_AS(load_grid(p), doctest::Contains("invalid JSON"), CatalogError);

    CHECK_THROWS_AS(load_grid("definitely_missing_file.json"), CatalogError);
    std::remove(p.c_str());
}
