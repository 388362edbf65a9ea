#include "plr/theta.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "plr/error.hpp"

namespace plr {

namespace {

// Terms with |R(n - c)| > rho are below 1e-37 of the largest term.
const double kRho = std::sqrt(2.0 * 37.0 * std::log(10.0));
constexpr long kMaxRange = 10000;

struct Box {
    std::vector<long> lo, hi;
};

Box lattice_box(const CVec& u, const PeriodMatrix& pm) {
    const int g = pm.genus();
    Eigen::VectorXd re(g);
    for (int k = 0; k < g; ++k) re[k] = u[k].real();
    // Stationary point of the real exponent -1/2 n Q n + n Re u.
    Eigen::VectorXd c = pm.neg_re_inverse() * re;
    Box box{std::vector<long>(g), std::vector<long>(g)};
    for (int k = 0; k < g; ++k) {
        double half = kRho * std::sqrt(pm.neg_re_inverse()(k, k));
        if (!std::isfinite(c[k]) || half > kMaxRange || std::abs(c[k]) > kMaxRange)
            throw Error(ErrorKind::TruncationOverflow, "theta truncation radius exceeds 1e4");
        box.lo[k] = long(std::ceil(c[k] - half));
        box.hi[k] = long(std::floor(c[k] + half));
    }
    return box;
}

template <class Fn>
void for_each_lattice_point(const Box& box, Fn&& fn) {
    const int g = int(box.lo.size());
    Eigen::VectorXd n(g);
    std::vector<long> cur(box.lo);
    for (int k = 0; k < g; ++k) n[k] = double(cur[k]);
    while (true) {
        fn(n);
        int k = 0;
        while (k < g) {
            if (cur[k] < box.hi[k]) {
                ++cur[k];
                n[k] = double(cur[k]);
                break;
            }
            cur[k] = box.lo[k];
            n[k] = double(cur[k]);
            ++k;
        }
        if (k == g) return;
    }
}

}  // namespace

PeriodMatrix::PeriodMatrix(const CMat& tau) : tau_(tau) {
    if (tau.rows() != tau.cols() || tau.rows() == 0)
        throw Error(ErrorKind::InvalidPeriodMatrix, "tau must be square and non-empty");
    if ((tau - tau.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, tau.cwiseAbs().maxCoeff()))
        throw Error(ErrorKind::InvalidPeriodMatrix, "tau is not symmetric");
    Eigen::MatrixXd q = -tau.real();
    q = 0.5 * (q + q.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q);
    if (eig.eigenvalues().minCoeff() < 1e-6)
        throw Error(ErrorKind::InvalidPeriodMatrix, "-Re tau has eigenvalue below 1e-6");
    Eigen::LLT<Eigen::MatrixXd> llt(q);
    if (llt.info() != Eigen::Success) throw Error(ErrorKind::InvalidPeriodMatrix, "Cholesky of -Re tau failed");
    r_ = llt.matrixU();
    qinv_ = llt.solve(Eigen::MatrixXd::Identity(q.rows(), q.cols()));
}

PeriodMatrix PeriodMatrix::scalar(cplx tau) {
    CMat m(1, 1);
    m(0, 0) = tau;
    return PeriodMatrix(m);
}

bool PeriodMatrix::has_real_structure(double tol) const {
    for (int j = 0; j < genus(); ++j)
        for (int k = 0; k < genus(); ++k) {
            double want = j == k ? 0.0 : std::numbers::pi;
            if (std::abs(tau_(j, k).imag() - want) > tol) return false;
        }
    return true;
}

ThetaJet theta_jet(const CVec& u, const PeriodMatrix& pm, const CVec& d1, const CVec& d2) {
    const int g = pm.genus();
    if (u.size() != g || d1.size() != g || d2.size() != g)
        throw Error(ErrorKind::InvalidInput, "theta argument dimension mismatch");
    if (g == 1) return theta1_jet(u[0], pm.tau()(0, 0), d1[0], d2[0]);
    ThetaJet jet{};
    const CMat& tau = pm.tau();
    for_each_lattice_point(lattice_box(u, pm), [&](const Eigen::VectorXd& n) {
        CVec nc = n.cast<cplx>();
        cplx e = std::exp(0.5 * nc.dot(tau * nc) + nc.dot(u));
        cplx a = nc.dot(d1), b = nc.dot(d2);
        jet.value += e;
        jet.d1 += a * e;
        jet.d2 += b * e;
        jet.d12 += a * b * e;
    });
    return jet;
}

cplx theta(const CVec& u, const PeriodMatrix& pm) {
    CVec zero = CVec::Zero(u.size());
    return theta_jet(u, pm, zero, zero).value;
}

cplx theta_shift_factor(const CVec& u, const PeriodMatrix& pm, int k) {
    if (k < 0 || k >= pm.genus()) throw Error(ErrorKind::InvalidInput, "basis index out of range");
    return std::exp(-0.5 * pm.tau()(k, k) - u[k]);
}

cplx theta_dderiv(const CVec& u, const PeriodMatrix& pm, const CVec& direction, int order) {
    if (order == 1) return theta_jet(u, pm, direction, CVec::Zero(u.size())).d1;
    if (order == 2) return theta_jet(u, pm, direction, direction).d12;
    throw Error(ErrorKind::InvalidInput, "derivative order must be 1 or 2");
}

ThetaJet theta1_jet(cplx u, cplx tau, cplx d1, cplx d2) {
    double q = -tau.real();
    if (!(q >= 1e-6)) throw Error(ErrorKind::InvalidPeriodMatrix, "-Re tau below 1e-6");
    double c = u.real() / q, half = kRho / std::sqrt(q);
    if (!std::isfinite(c) || half > kMaxRange || std::abs(c) > kMaxRange)
        throw Error(ErrorKind::TruncationOverflow, "theta truncation radius exceeds 1e4");
    long lo = long(std::ceil(c - half)), hi = long(std::floor(c + half));
    ThetaJet jet{};
    for (long k = lo; k <= hi; ++k) {
        double n = double(k);
        cplx e = std::exp(0.5 * n * n * tau + n * u);
        jet.value += e;
        jet.d1 += n * d1 * e;
        jet.d2 += n * d2 * e;
        jet.d12 += n * n * d1 * d2 * e;
    }
    return jet;
}

cplx theta1(cplx u, cplx tau) { return theta1_jet(u, tau, 0.0, 0.0).value; }

CVec lattice_reduce(const CVec& u, const PeriodMatrix& pm) {
    const int g = pm.genus();
    Eigen::VectorXd re(g), im(g);
    for (int k = 0; k < g; ++k) {
        re[k] = u[k].real();
        im[k] = u[k].imag();
    }
    // u = 2 pi i a + tau b with real a, b.
    Eigen::VectorXd b = -(pm.neg_re_inverse() * re);
    Eigen::VectorXd a = (im - pm.tau().imag() * b) / (2.0 * std::numbers::pi);
    CVec out = u;
    Eigen::VectorXd nb = b.array().round().matrix();
    Eigen::VectorXd na = a.array().round().matrix();
    out -= pm.tau() * nb.cast<cplx>();
    out -= (2.0 * std::numbers::pi * cplx(0.0, 1.0)) * na.cast<cplx>();
    return out;
}

}  // namespace plr
