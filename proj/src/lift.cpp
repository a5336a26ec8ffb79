#include "hsl/lift.hpp"

#include <cmath>
#include <limits>

namespace hsl {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::Vector4d;
using Eigen::VectorXd;
using cplx = std::complex<double>;

void compute_alpha(LiftBundle& b) {
    const auto fx = ddx(b.F), fy = ddy(b.F);
    // margin cells of the derivative fields hold default (empty) matrices, so
    // fill explicitly over the joint valid region only
    const MatrixXd zero = MatrixXd::Zero(b.n + 1, b.n + 1);
    b.alpha.ax = Field<MatrixXd>(b.F.dom, zero);
    b.alpha.ay = Field<MatrixXd>(b.F.dom, zero);
    b.alpha.ax.mx = b.alpha.ay.mx = std::max(fx.mx, fy.mx);
    b.alpha.ax.my = b.alpha.ay.my = std::max(fx.my, fy.my);
    b.alpha.ax.for_valid([&](int i, int j) {
        const MatrixXd inv = b.F.at(i, j).inverse();
        b.alpha.ax.at(i, j) = inv * fx.at(i, j);
        b.alpha.ay.at(i, j) = inv * fy.at(i, j);
    });
}

// complete the orthonormal pair (e1, e2) in R^4 to a positively oriented
// orthonormal basis; (f1, f2) as close as possible to the given seeds
std::pair<Vector4d, Vector4d> complete_plane(const Vector4d& e1, const Vector4d& e2,
                                             const Vector4d* seed1, const Vector4d* seed2) {
    auto proj = [&](Vector4d v) {
        v -= e1.dot(v) * e1 + e2.dot(v) * e2;
        return v;
    };
    Vector4d f1, f2;
    bool seeded = false;
    if (seed1) {
        f1 = proj(*seed1);
        if (f1.norm() > 1e-6) {
            f1.normalize();
            f2 = proj(*seed2);
            f2 -= f1.dot(f2) * f1;
            if (f2.norm() > 1e-6) {
                f2.normalize();
                seeded = true;
            }
        }
    }
    if (!seeded) {
        Eigen::Matrix<double, 4, 2> m;
        m.col(0) = e1;
        m.col(1) = e2;
        const Eigen::HouseholderQR<Eigen::Matrix<double, 4, 2>> qr(m);
        const Eigen::Matrix4d q = qr.householderQ();
        f1 = q.col(2);
        f2 = q.col(3);
    }
    Eigen::Matrix4d c;
    c.col(0) = e1;
    c.col(1) = e2;
    c.col(2) = f1;
    c.col(3) = f2;
    if (c.determinant() < 0) f2 = -f2;
    return {f1, f2};
}

LiftBundle finish(LiftBundle b) {
    compute_alpha(b);
    return b;
}

}  // namespace

OctImmersion OctImmersion::from_entry(const CatalogEntry& e, int n) {
    if (e.dim != 8) throw LiftError("OctImmersion: catalog entry is not octonion-valued");
    OctImmersion im;
    im.X = octonion_field(sample_entry(e, n));
    if (e.eval_dx) {
        im.Xx = sample<Octonion>(im.X.dom,
                                 [&](double x, double y) { return to_octonion(e.eval_dx(x, y)); });
        im.Xy = sample<Octonion>(im.X.dom,
                                 [&](double x, double y) { return to_octonion(e.eval_dy(x, y)); });
    } else {
        im.Xx = ddx(im.X);
        im.Xy = ddy(im.X);
    }
    return im;
}

LiftBundle lift_frame(const Immersion& im, const Quaternion& u) {
    if (std::abs(u.norm() - 1) > 1e-10 || std::abs(u.w) > 1e-12)
        throw LiftError("lift_frame: u must be a unit imaginary quaternion");
    // constant reference basis (1, u, b2, b3), positively oriented
    const auto [b2, b3] = complete_plane(Quaternion::one().vec(), u.vec(), nullptr, nullptr);
    Eigen::Matrix4d B;
    B.col(0) = Quaternion::one().vec();
    B.col(1) = u.vec();
    B.col(2) = b2;
    B.col(3) = b3;

    LiftBundle b;
    b.kind = GroupKind::SO4R4;
    b.n = 4;
    b.F = Field<MatrixXd>(im.X.dom, MatrixXd::Zero(5, 5));
    b.F.mx = im.Xx.mx;
    b.F.my = im.Xx.my;
    Field<Vector4d> f1(im.X.dom), f2(im.X.dom);
    for (int i = b.F.ilo(); i < b.F.ihi(); ++i)
        for (int j = b.F.jlo(); j < b.F.jhi(); ++j) {
            const Vector4d e1 = im.Xx.at(i, j).normalized().vec();
            const Vector4d e2 = im.Xy.at(i, j).normalized().vec();
            const bool first = i == b.F.ilo() && j == b.F.jlo();
            const int pi = (j == b.F.jlo()) ? i - 1 : i;
            const int pj = (j == b.F.jlo()) ? b.F.jlo() : j - 1;
            const Vector4d* s1 = first ? nullptr : &f1.at(pi, pj);
            const Vector4d* s2 = first ? nullptr : &f2.at(pi, pj);
            const auto [g1, g2] = complete_plane(e1, e2, s1, s2);
            f1.at(i, j) = g1;
            f2.at(i, j) = g2;
            Eigen::Matrix4d c;
            c.col(0) = e1;
            c.col(1) = e2;
            c.col(2) = g1;
            c.col(3) = g2;
            b.F.at(i, j) = homogeneous(c * B.transpose(), im.X.at(i, j).vec());
        }
    return finish(std::move(b));
}

double u2_completion_residual(const Immersion& im) {
    double worst = 0;
    const Quaternion qi = Quaternion::i();
    im.Xx.for_valid([&](int i, int j) {
        const Quaternion e1 = im.Xx.at(i, j).normalized();
        const Quaternion e2 = im.Xy.at(i, j).normalized();
        Eigen::Matrix4d m;
        m.col(0) = e1.vec();
        m.col(1) = (qi * e1).vec();
        m.col(2) = e2.vec();
        m.col(3) = (qi * e2).vec();
        worst = std::max(worst,
                         (m.transpose() * m - Eigen::Matrix4d::Identity()).norm());
    });
    return worst;
}

LiftBundle lift_frame_unitary(const Immersion& im, double tol) {
    const double r = u2_completion_residual(im);
    if (r > tol)
        throw LiftError("lift_frame_unitary: completion is not orthogonal (residual " +
                        std::to_string(r) + "); immersion is not Lagrangian");
    LiftBundle b;
    b.kind = GroupKind::U2C2;
    b.n = 4;
    b.F = Field<MatrixXd>(im.X.dom, MatrixXd::Zero(5, 5));
    b.F.mx = im.Xx.mx;
    b.F.my = im.Xx.my;
    const Quaternion qi = Quaternion::i();
    b.F.for_valid([&](int i, int j) {
        const Quaternion e1 = im.Xx.at(i, j).normalized();
        const Quaternion e2 = im.Xy.at(i, j).normalized();
        Eigen::Matrix4d m;
        m.col(0) = e1.vec();
        m.col(1) = (qi * e1).vec();
        m.col(2) = e2.vec();
        m.col(3) = (qi * e2).vec();
        b.F.at(i, j) = homogeneous(m, im.X.at(i, j).vec());
    });
    return finish(std::move(b));
}

LiftBundle lift_hopf(const Immersion& im, const Quaternion& u) {
    const GaussData g = gauss_data(im, std::numeric_limits<double>::infinity());
    LiftBundle b;
    b.kind = GroupKind::Spin3H;
    b.n = 4;
    b.F = Field<MatrixXd>(im.X.dom, MatrixXd::Zero(5, 5));
    b.F.mx = g.rho.mx;
    b.F.my = g.rho.my;
    Field<Quaternion> p(im.X.dom);
    // at rho = -u the minimal rotor is not unique: the solutions form the
    // unit circle in the plane orthogonal to span{1, u}; take the one
    // nearest the continuation neighbor
    auto rotor_antipodal = [&](const Quaternion* prev) {
        Quaternion seed = prev ? *prev : Quaternion::i();
        if (prev == nullptr && std::abs(dot(u, Quaternion::i())) > 0.9) seed = Quaternion::j();
        seed -= dot(seed, Quaternion::one()) * Quaternion::one();
        seed -= dot(seed, u) * u;
        if (seed.norm() < 1e-8) return (u * Quaternion::i() - dot(u * Quaternion::i(), u) * u).normalized();
        return seed.normalized();
    };
    for (int i = b.F.ilo(); i < b.F.ihi(); ++i)
        for (int j = b.F.jlo(); j < b.F.jhi(); ++j) {
            const bool first = i == b.F.ilo() && j == b.F.jlo();
            const Quaternion* prevp =
                first ? nullptr
                      : &((j == b.F.jlo()) ? p.at(i - 1, b.F.jlo()) : p.at(i, j - 1));
            const Quaternion& rho = g.rho.at(i, j);
            Quaternion q = (rho + u).norm() < 1e-8 ? rotor_antipodal(prevp) : rotor_to(u, rho);
            if (!first && (q - *prevp).norm() > (q + *prevp).norm()) q = -q;
            p.at(i, j) = q;
            b.F.at(i, j) = homogeneous(left_mult_matrix(q), im.X.at(i, j).vec());
        }
    return finish(std::move(b));
}

LiftBundle lift_hopf_oct(const OctImmersion& im, const Octonion& u) {
    LiftBundle b;
    b.kind = GroupKind::Spin7O;
    b.n = 8;
    b.F = Field<MatrixXd>(im.X.dom, MatrixXd::Zero(9, 9));
    b.F.mx = std::max(im.Xx.mx, im.Xy.mx);
    b.F.my = std::max(im.Xx.my, im.Xy.my);
    b.F.for_valid([&](int i, int j) {
        const Octonion e1 = im.Xx.at(i, j).normalized();
        const Octonion e2 = im.Xy.at(i, j).normalized();
        const Octonion rho = stiefel_rho(e1, e2);
        b.F.at(i, j) = homogeneous(spin7_rotor_to(u, rho).m, im.X.at(i, j).vec());
    });
    return finish(std::move(b));
}

LiftBundle rotor_bundle(const Field<Quaternion>& p) {
    LiftBundle b;
    b.kind = GroupKind::Spin3H;
    b.n = 4;
    b.F = Field<MatrixXd>(p.dom, MatrixXd::Zero(5, 5));
    b.F.mx = p.mx;
    b.F.my = p.my;
    b.F.for_valid([&](int i, int j) {
        b.F.at(i, j) = homogeneous(left_mult_matrix(p.at(i, j)), Vector4d::Zero());
    });
    return finish(std::move(b));
}

LiftBundle rotor_bundle_entry(const CatalogEntry& e, int n) {
    if (!e.frame_only) throw LiftError("rotor_bundle_entry: entry is not frame-only");
    return rotor_bundle(quaternion_field(sample_entry(e, n)));
}

LiftBundle bundle_from_fields(GroupKind kind, const Field<Eigen::MatrixXd>& rot,
                              const Field<Eigen::VectorXd>& trans) {
    LiftBundle b;
    b.kind = kind;
    b.n = int(rot.v[0].rows());
    b.F = Field<MatrixXd>(rot.dom, MatrixXd::Zero(b.n + 1, b.n + 1));
    b.F.mx = std::max(rot.mx, trans.mx);
    b.F.my = std::max(rot.my, trans.my);
    b.F.for_valid([&](int i, int j) {
        b.F.at(i, j) = homogeneous(rot.at(i, j), trans.at(i, j));
    });
    return finish(std::move(b));
}

void decompose_alpha(LiftBundle& b, const TauAction& tau) {
    if (tau.n != b.n) throw LiftError("decompose_alpha: tau/bundle dimension mismatch");
    const cplx iu(0, 1);
    const auto az_full = zip_map(b.alpha.ax, b.alpha.ay, [&](const MatrixXd& x, const MatrixXd& y) {
        return MatrixXcd(0.5 * (x.cast<cplx>() - iu * y.cast<cplx>()));
    });
    const auto azbar_full = zip_map(b.alpha.ax, b.alpha.ay, [&](const MatrixXd& x, const MatrixXd& y) {
        return MatrixXcd(0.5 * (x.cast<cplx>() + iu * y.cast<cplx>()));
    });
    for (int k = 0; k < 4; ++k) {
        b.az[k] = map_field(az_full, [&](const MatrixXcd& m) { return tau.project(k, m); });
        b.azbar[k] = map_field(azbar_full, [&](const MatrixXcd& m) { return tau.project(k, m); });
    }
    // projector completeness
    double rel = 0;
    az_full.for_valid([&](int i, int j) {
        MatrixXcd s = b.az[0].at(i, j);
        for (int k = 1; k < 4; ++k) s += b.az[k].at(i, j);
        const double scale = std::max(1.0, az_full.at(i, j).norm());
        rel = std::max(rel, (s - az_full.at(i, j)).norm() / scale);
    });
    if (rel > 1e-12) throw LiftError("decompose_alpha: projectors do not re-sum to alpha");
    b.decomposed = true;
}

double lift_condition_residual(const LiftBundle& b) {
    if (!b.decomposed) throw LiftError("lift_condition_residual: call decompose_alpha first");
    const double bad = sup_norm(b.azbar_comp(-1));
    double scale = 0;
    b.alpha.ax.for_valid([&](int i, int j) {
        scale = std::max({scale, b.alpha.ax.at(i, j).norm(), b.alpha.ay.at(i, j).norm()});
    });
    return scale > 0 ? bad / scale : bad;
}

namespace {

Connection<MatrixXcd> assemble_lambda(const LiftBundle& b, cplx lambda, bool beta_family) {
    const cplx iu(0, 1);
    const cplx l1 = lambda, lm1 = 1.0 / lambda, l2 = l1 * l1, lm2 = lm1 * lm1;
    Connection<MatrixXcd> c;
    auto combine = [&](bool bar) {
        const auto& comp = bar ? b.azbar : b.az;
        auto get = [&](int k) -> const Field<MatrixXcd>& { return comp[((k % 4) + 4) % 4]; };
        Field<MatrixXcd> out = get(0);
        out.for_valid([&](int i, int j) {
            MatrixXcd m = get(0).at(i, j) + (bar ? l2 : lm2) * get(2).at(i, j);
            if (!beta_family) m += lm1 * get(-1).at(i, j) + l1 * get(1).at(i, j);
            out.at(i, j) = m;
        });
        return out;
    };
    const Field<MatrixXcd> az = combine(false), azbar = combine(true);
    c.ax = zip_map(az, azbar, [](const MatrixXcd& a, const MatrixXcd& bm) { return MatrixXcd(a + bm); });
    c.ay = zip_map(az, azbar, [&](const MatrixXcd& a, const MatrixXcd& bm) { return MatrixXcd(iu * (a - bm)); });
    return c;
}

}  // namespace

FlatnessResidual flatness_residual(const LiftBundle& b, cplx lambda, bool beta_family) {
    if (!b.decomposed) throw LiftError("flatness_residual: call decompose_alpha first");
    if (std::abs(lambda) == 0.0) throw LiftError("flatness_residual: lambda must be nonzero");
    FlatnessResidual r;
    r.total = sup_norm(curvature_residual(assemble_lambda(b, lambda, beta_family)));

    // Laurent extraction: curvature degrees span -3..3 (the +-4 coefficients
    // vanish structurally because dz ^ dz = 0); 8th roots of unity separate
    // them, with +-4 aliased into one (checked ~ 0) bin labeled 4.
    std::vector<Field<MatrixXcd>> curls;
    for (int m = 0; m < 8; ++m) {
        const cplx lm = std::polar(1.0, 2 * M_PI * m / 8);
        curls.push_back(curvature_residual(assemble_lambda(b, lm, beta_family)));
    }
    for (int d = -3; d <= 4; ++d) {
        Field<MatrixXcd> coeff = curls[0];
        coeff.for_valid([&](int i, int j) {
            MatrixXcd acc = MatrixXcd::Zero(b.n + 1, b.n + 1);
            for (int m = 0; m < 8; ++m) {
                const cplx w = std::polar(1.0, -2 * M_PI * m * d / 8);
                acc += w * curls[m].at(i, j);
            }
            coeff.at(i, j) = acc / 8.0;
        });
        const double s = sup_norm(coeff);
        r.per_power[d] = s;
        if (d != 0) r.laurent_sum += s;
    }
    return r;
}

double lemma2_identity_residual(const LiftBundle& b, cplx lambda) {
    if (!b.decomposed) throw LiftError("lemma2_identity_residual: call decompose_alpha first");
    const cplx iu(0, 1);
    const cplx l = lambda;
    const cplx c1 = std::pow(l, -3) - l;       // multiplies [alpha_2' ^ alpha_{-1}'']
    const cplx c2 = std::pow(l, 3) - 1.0 / l;  // multiplies [alpha_2'' ^ alpha_1']
    const auto lhs = curvature_residual(assemble_lambda(b, lambda, false));
    const auto beta = curvature_residual(assemble_lambda(b, lambda, true));
    double worst = 0;
    lhs.for_valid([&](int i, int j) {
        auto comm = [](const MatrixXcd& a, const MatrixXcd& bm) { return MatrixXcd(a * bm - bm * a); };
        // [a dz ^ b dzbar](d/dx, d/dy) = -2i[a, b]; dzbar ^ dz gives +2i[a, b]
        const MatrixXcd extra =
            c1 * (-2.0 * iu) * comm(b.az_comp(2).at(i, j), b.azbar_comp(-1).at(i, j)) +
            c2 * (2.0 * iu) * comm(b.azbar_comp(2).at(i, j), b.az_comp(1).at(i, j));
        worst = std::max(worst, (lhs.at(i, j) - beta.at(i, j) - extra).norm());
    });
    return worst;
}

HslReductionReport hsl_reduction_check(const Immersion& im) {
    const GaussData g = gauss_data(im);
    const Field<double>& beta = g.beta_checked();
    HslReductionReport rep;

    // U(1) reduction: the hopf lift rotor is +-e^{i beta/2}
    const LiftBundle hop = lift_hopf(im);
    double plus = 0, minus = 0;
    hop.F.for_valid([&](int i, int j) {
        const Quaternion p = Quaternion::from_vec(hop.F.at(i, j).block<4, 1>(0, 0));
        const Quaternion ref{std::cos(beta.at(i, j) / 2), std::sin(beta.at(i, j) / 2), 0, 0};
        plus = std::max(plus, (p - ref).norm());
        minus = std::max(minus, (p + ref).norm());
    });
    rep.u1_residual = std::min(plus, minus);

    // U(2) reduction: det_C R = e^{i beta} for the unitary frame lift
    const LiftBundle uf = lift_frame_unitary(im);
    uf.F.for_valid([&](int i, int j) {
        const Quaternion r1 = Quaternion::from_vec(uf.F.at(i, j).block<4, 1>(0, 0));
        const Quaternion rj = Quaternion::from_vec(uf.F.at(i, j).block<4, 1>(0, 2));
        const cplx det = r1.c1() * rj.c2() - rj.c1() * r1.c2();
        const cplx ref = std::polar(1.0, beta.at(i, j));
        rep.det_residual = std::max(rep.det_residual, std::abs(det - ref));
    });
    return rep;
}

}  // namespace hsl
