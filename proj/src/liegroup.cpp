#include "hsl/liegroup.hpp"

#include <complex>

#include "hsl/spin7.hpp"

namespace hsl {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

std::vector<MatrixXd> rotation_basis(GroupKind kind) {
    std::vector<MatrixXd> rot;
    switch (kind) {
        case GroupKind::Spin3H:
            for (auto q : {Quaternion::i(), Quaternion::j(), Quaternion::k()})
                rot.push_back(left_mult_matrix(q));
            break;
        case GroupKind::SO4R4:
            for (auto q : {Quaternion::i(), Quaternion::j(), Quaternion::k()}) {
                rot.push_back(left_mult_matrix(q));
                rot.push_back(right_mult_matrix(q));
            }
            break;
        case GroupKind::U2C2:
            // commutant of L_i inside so(4): L_i plus all right multiplications
            rot.push_back(left_mult_matrix(Quaternion::i()));
            for (auto q : {Quaternion::i(), Quaternion::j(), Quaternion::k()})
                rot.push_back(right_mult_matrix(q));
            break;
        case GroupKind::U1C2:
            rot.push_back(left_mult_matrix(Quaternion::i()));
            break;
        case GroupKind::Spin7O:
            for (const auto& m : spin7_lie_basis()) rot.push_back(m);
            break;
    }
    return rot;
}

TauAction assemble(GroupKind kind, int n, const MatrixXd& lu) {
    TauAction t;
    t.kind = kind;
    t.n = n;
    t.Mu = MatrixXd::Zero(n + 1, n + 1);
    t.Mu.topLeftCorner(n, n) = lu;
    t.Mu(n, n) = -1;

    for (const auto& r : rotation_basis(kind))
        t.basis.push_back(homogeneous_algebra(r / r.norm(), VectorXd::Zero(n)));
    for (int k = 0; k < n; ++k)
        t.basis.push_back(homogeneous_algebra(MatrixXd::Zero(n, n), VectorXd::Unit(n, k)));

    // sanity: tau^4 = Id and tau preserves g
    for (const auto& b : t.basis) {
        MatrixXd x = b;
        for (int m = 0; m < 4; ++m) x = t.tau(x);
        if ((x - b).norm() > 1e-12) throw LiftError("build_tau: tau^4 != Id on the Lie algebra");
        MatrixXd im = t.tau(b);
        for (const auto& c : t.basis) im -= (im.array() * c.array()).sum() * c;
        if (im.norm() > 1e-10)
            throw LiftError("build_tau: tau does not preserve the Lie algebra");
    }
    return t;
}

}  // namespace

Eigen::MatrixXd homogeneous(const Eigen::MatrixXd& rot, const Eigen::VectorXd& trans) {
    const int n = int(rot.rows());
    MatrixXd m = MatrixXd::Zero(n + 1, n + 1);
    m.topLeftCorner(n, n) = rot;
    m.topRightCorner(n, 1) = trans;
    m(n, n) = 1;
    return m;
}

Eigen::MatrixXd homogeneous_algebra(const Eigen::MatrixXd& a, const Eigen::VectorXd& t) {
    const int n = int(a.rows());
    MatrixXd m = MatrixXd::Zero(n + 1, n + 1);
    m.topLeftCorner(n, n) = a;
    m.topRightCorner(n, 1) = t;
    return m;
}

MatrixXcd TauAction::project(int k, const MatrixXcd& xi) const {
    const std::complex<double> iu(0, 1);
    MatrixXcd acc = MatrixXcd::Zero(xi.rows(), xi.cols());
    MatrixXcd pow = xi;
    for (int m = 0; m < 4; ++m) {
        // i^{-km} = conj(i^{km})
        std::complex<double> w(1, 0);
        for (int c = 0; c < ((k * m) % 4 + 4) % 4; ++c) w *= iu;
        acc += std::conj(w) * pow;
        pow = tau_c(pow);
    }
    return acc / 4.0;
}

int TauAction::complex_eigendim(int k) const {
    const int d = int(basis.size());
    const int sz = int(basis[0].size());
    MatrixXcd cols(sz, d);
    for (int b = 0; b < d; ++b) {
        const MatrixXcd p = project(k, basis[b].cast<std::complex<double>>());
        cols.col(b) = Eigen::Map<const Eigen::VectorXcd>(p.data(), sz);
    }
    Eigen::JacobiSVD<MatrixXcd> svd(cols);
    int rank = 0;
    for (int s = 0; s < svd.singularValues().size(); ++s)
        if (svd.singularValues()[s] > 1e-8) ++rank;
    return rank;
}

TauAction build_tau(GroupKind kind, const Quaternion& u) {
    if (kind == GroupKind::Spin7O)
        throw LiftError("build_tau: use build_tau_oct for the octonionic group");
    if (std::abs(u.norm() - 1) > 1e-10 || std::abs(u.w) > 1e-12)
        throw LiftError("build_tau: u must be a unit imaginary quaternion");
    if ((kind == GroupKind::U2C2 || kind == GroupKind::U1C2) &&
        (u - Quaternion::j()).norm() > 1e-12)
        throw LiftError("build_tau: the U(2)/U(1) kinds require u = j");
    return assemble(kind, 4, left_mult_matrix(u));
}

TauAction build_tau_oct(const Octonion& u) {
    if (std::abs(u.norm() - 1) > 1e-10 || std::abs(u.real()) > 1e-12)
        throw LiftError("build_tau_oct: u must be a unit imaginary octonion");
    return assemble(GroupKind::Spin7O, 8, left_mult_matrix(u));
}

}  // namespace hsl
