#include "doctest.h"

#include <cmath>

#include "hsl/gauss.hpp"

using namespace hsl;

TEST_CASE("conformality residual") {
    CHECK(conformality_residual(Immersion::from_entry(builtin("clifford_torus"), 33)) < 1e-12);
    CHECK(conformality_residual(Immersion::from_entry(builtin("lagrangian_catenoid"), 33)) < 1e-12);
    CHECK(conformality_residual(Immersion::from_entry(builtin("torus_of_revolution"), 128)) < 1e-12);

    // anisotropic plane X = (x, 2y, 0, 0): residual |1 - 2| / 4
    const GridDomain dom = box_domain(-1, 1, -1, 1, 17);
    auto X = sample<Quaternion>(dom, [](double x, double y) { return Quaternion{x, 2 * y, 0, 0}; });
    CHECK(conformality_residual(Immersion::from_field(X)) == doctest::Approx(0.25));

    // grid-derivative route on the Clifford torus: the x- and y-speeds pick up
    // identical sin(h)/h factors, so conformality is still at rounding level
    auto ct = quaternion_field(sample_entry(builtin("clifford_torus"), 33));
    CHECK(conformality_residual(Immersion::from_field(ct)) < 1e-12);

    CHECK_THROWS_AS(Immersion::from_field(sample<Quaternion>(
                        dom, [](double, double) { return Quaternion::one(); })),
                    GaussError);
    CHECK_THROWS_AS(Immersion::from_entry(builtin("nonharmonic_rotor"), 17), GaussError);
}

TEST_CASE("gauss data: frames, rho, beta") {
    // plane span{1, j}
    const auto plane = gauss_data(Immersion::from_entry(builtin("lagrangian_plane"), 17));
    CHECK(plane.lagrangian);
    plane.rho.for_valid([&](int i, int j) {
        CHECK((plane.rho.at(i, j) - Quaternion::j()).norm() < 1e-14);
        CHECK(std::abs(plane.beta.at(i, j)) < 1e-14);
        CHECK(std::abs(plane.w1.at(i, j)) < 1e-14);  // omega_1 vanishes: Lagrangian
    });
    CHECK(plane.defining_residual < 1e-14);

    // Clifford torus: rho = e^{i(x+y+pi)} j, beta unwraps to x + y + pi
    const auto im = Immersion::from_entry(builtin("clifford_torus"), 33);
    const auto ct = gauss_data(im);
    CHECK(ct.lagrangian);
    CHECK(ct.defining_residual < 1e-12);
    ct.beta.for_valid([&](int i, int j) {
        const double x = im.X.dom.x(i), y = im.X.dom.y(j);
        CHECK(std::abs(ct.beta.at(i, j) - (x + y + M_PI)) < 1e-10);
        const Quaternion expect =
            Quaternion{0, 0, std::cos(x + y + M_PI), std::sin(x + y + M_PI)};
        CHECK((ct.rho.at(i, j) - expect).norm() < 1e-12);
    });

    // complex line: rho == i, not Lagrangian, beta refused
    const auto cl = gauss_data(Immersion::from_entry(builtin("complex_line"), 17),
                               /*lag_tol=*/1e-8, /*conf_tol=*/1e-6);
    CHECK(!cl.lagrangian);
    CHECK(cl.lagrangian_sup == doctest::Approx(1.0));
    cl.rho.for_valid([&](int i, int j) {
        CHECK((cl.rho.at(i, j) - Quaternion::i()).norm() < 1e-14);
    });
    CHECK_THROWS_AS(cl.beta_checked(), GaussError);

    // grid-derivative route. On the Clifford torus the central differences
    // only rescale the exact tangents, so the residual stays at rounding
    // level; on the catenoid the x- and y-scalings differ (sin vs sinh) and
    // the generic O(h^2) behavior shows.
    auto defres = [&](const char* name, int n) {
        auto X = quaternion_field(sample_entry(builtin(name), n));
        // widen the conformality gate: grid derivatives carry their own O(h^2)
        return gauss_data(Immersion::from_field(X), 1e-8, 0.05).defining_residual;
    };
    CHECK(defres("clifford_torus", 33) < 1e-12);
    const double r1 = defres("lagrangian_catenoid", 33), r2 = defres("lagrangian_catenoid", 65);
    CHECK(r1 < 0.01);
    CHECK(r1 / r2 > 3.0);
    CHECK(r1 / r2 < 5.0);

    // nonconformal input is rejected
    const GridDomain dom = box_domain(-1, 1, -1, 1, 17);
    auto bad = sample<Quaternion>(dom, [](double x, double y) { return Quaternion{x, 2 * y, 0, 0}; });
    CHECK_THROWS_AS(gauss_data(Immersion::from_field(bad)), GaussError);
}

TEST_CASE("lagrangian residual") {
    CHECK(lagrangian_residual(Immersion::from_entry(builtin("clifford_torus"), 33)) < 1e-12);
    CHECK(lagrangian_residual(Immersion::from_entry(builtin("lagrangian_catenoid"), 33)) < 1e-12);
    CHECK(lagrangian_residual(Immersion::from_entry(builtin("complex_line"), 17)) ==
          doctest::Approx(1.0));
}

TEST_CASE("mean curvature and the angle identity") {
    // Clifford torus: H = -2X, |H| = 2
    const auto im = Immersion::from_entry(builtin("clifford_torus"), 33);
    const auto mc = mean_curvature(im);
    mc.h.for_valid([&](int i, int j) {
        CHECK((mc.h.at(i, j) + 2.0 * im.X.at(i, j)).norm() < 2e-2);
        CHECK(mc.h.at(i, j).norm() == doctest::Approx(2.0).epsilon(1e-2));
    });

    // identity residual |H - J grad beta| converges at order 2
    auto res = [&](int n) {
        return mean_curvature(Immersion::from_entry(builtin("clifford_torus"), n))
            .identity_residual;
    };
    const double r1 = res(33), r2 = res(65);
    CHECK(r1 / r2 > 3.0);
    CHECK(r1 / r2 < 5.0);

    // plane: both sides vanish
    const auto pl = mean_curvature(Immersion::from_entry(builtin("lagrangian_plane"), 17));
    CHECK(sup_norm(pl.h) < 1e-12);
    CHECK(sup_norm(pl.j_grad_beta) < 1e-12);

    // catenoid is minimal: H = O(h^2), beta gradient ~ 0
    const auto cat = mean_curvature(Immersion::from_entry(builtin("lagrangian_catenoid"), 33));
    CHECK(sup_norm(cat.h) < 5e-3);
    CHECK(sup_norm(cat.j_grad_beta) < 1e-10);

    CHECK_THROWS_AS(mean_curvature(Immersion::from_entry(builtin("complex_line"), 17)),
                    GaussError);
}

TEST_CASE("hsl residual") {
    const auto ct = hsl_residual(Immersion::from_entry(builtin("clifford_torus"), 33));
    CHECK(ct.flat < 1e-10);  // beta linear: stencil-exact
    const auto cat = hsl_residual(Immersion::from_entry(builtin("lagrangian_catenoid"), 33));
    CHECK(cat.flat < 1e-10);  // beta constant
    CHECK(cat.intrinsic <= cat.flat + 1e-15);  // e^{-2 omega} <= 1 on cosh 2y

    // synthetic beta = x^2 without an immersion: Lap = 2
    const GridDomain dom = box_domain(-1, 1, -1, 1, 33);
    auto b = sample<double>(dom, [](double x, double) { return x * x; });
    CHECK(hsl_residual_from_beta(b) == doctest::Approx(2.0));

    CHECK_THROWS_AS(hsl_residual(Immersion::from_entry(builtin("complex_line"), 17)), GaussError);
}

TEST_CASE("special lagrangian check") {
    const auto cat =
        special_lagrangian_check(Immersion::from_entry(builtin("lagrangian_catenoid"), 33));
    CHECK(cat.special);
    CHECK(cat.deviation < 1e-10);

    const auto ct = special_lagrangian_check(Immersion::from_entry(builtin("clifford_torus"), 33));
    CHECK(!ct.special);
    CHECK(ct.deviation > 3.0);  // beta = x + y + pi ranges over 4 pi

    CHECK(special_lagrangian_check(Immersion::from_entry(builtin("lagrangian_plane"), 17)).special);

    // catenoid angle is pi/2
    const auto g = gauss_data(Immersion::from_entry(builtin("lagrangian_catenoid"), 33));
    g.beta.for_valid([&](int i, int j) {
        CHECK(std::abs(g.beta.at(i, j) - M_PI / 2) < 1e-8);
    });
}

TEST_CASE("cmc check") {
    const auto cyl = cmc_check(Immersion::from_entry(builtin("cmc_cylinder"), 33));
    CHECK(cyl.rho_plus_sigma_sup < 1e-10);
    CHECK(cyl.tension_sup < 5e-3);
    CHECK(std::abs(cyl.mean_h) == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(cyl.mean_h_spread < 1e-2);

    const auto sph = cmc_check(Immersion::from_entry(builtin("round_sphere"), 33));
    CHECK(sph.rho_plus_sigma_sup < 1e-10);
    CHECK(sph.tension_sup < 5e-2);
    CHECK(std::abs(sph.mean_h) == doctest::Approx(2.0).epsilon(1e-2));

    // the cylinder's Gauss map is a geodesic circle: its stencil truncation
    // is purely radial, so the projected tension is exactly zero; the sphere
    // shows the generic O(h^2) convergence
    auto tens = [&](const char* name, int n) {
        return cmc_check(Immersion::from_entry(builtin(name), n)).tension_sup;
    };
    CHECK(tens("cmc_cylinder", 65) < 1e-10);
    CHECK(tens("round_sphere", 33) / tens("round_sphere", 65) > 3.0);

    // torus of revolution is not CMC: tension bounded below, h-stable
    const double t1 = tens("torus_of_revolution", 33), t2 = tens("torus_of_revolution", 65);
    CHECK(t1 > 0.05);
    CHECK(t2 > 0.05);
    CHECK(std::abs(t1 - t2) < 0.1 * std::max(t1, t2));

    CHECK_THROWS_AS(cmc_check(Immersion::from_entry(builtin("clifford_torus"), 17)), GaussError);
}
