#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "plr/error.hpp"
#include "plr/theta.hpp"

using namespace plr;
using oracle::rel;

namespace {

const cplx kI(0.0, 1.0);

// Fixture period matrices: the two genus-one examples and a genus-two matrix
// with Im tau_12 = pi.
std::vector<PeriodMatrix> fixtures() {
    CMat t2(2, 2);
    t2 << cplx(-3.0, 0.0), cplx(-0.5, M_PI), cplx(-0.5, M_PI), cplx(-4.0, 0.0);
    return {PeriodMatrix::scalar(-9.6046554013), PeriodMatrix::scalar(-6.903947540768), PeriodMatrix(t2)};
}

// Plain summation over |n| <= 20 in each coordinate.
cplx direct_sum(const CVec& u, const CMat& tau) {
    cplx acc = 0.0;
    if (u.size() == 1) {
        for (int n = -20; n <= 20; ++n) acc += std::exp(0.5 * double(n * n) * tau(0, 0) + double(n) * u(0));
        return acc;
    }
    for (int a = -20; a <= 20; ++a)
        for (int b = -20; b <= 20; ++b) {
            Eigen::Vector2cd n(a, b);
            acc += std::exp(0.5 * (n.transpose() * tau * n)(0, 0) + (n.transpose() * u)(0, 0));
        }
    return acc;
}

CVec random_u(std::mt19937_64& rng, int g) {
    std::uniform_real_distribution<double> re(-2.0 * M_PI, 2.0 * M_PI), im(-4.0, 4.0);
    CVec u(g);
    for (int k = 0; k < g; ++k) u(k) = cplx(re(rng), im(rng));
    return u;
}

}  // namespace

TEST_CASE("theta at tau = -2 pi") {
    CVec u0 = CVec::Zero(1);
    PeriodMatrix t = PeriodMatrix::scalar(-2 * M_PI);
    CHECK(std::abs(theta(u0, t) - 1.08643481121330801) < 1e-14);
    CHECK(std::abs(theta(u0, t) - direct_sum(u0, t.tau())) < 1e-14);
}

TEST_CASE("theta matches direct summation") {
    std::mt19937_64 rng(3);
    for (const auto& t : fixtures())
        for (int i = 0; i < 20; ++i) {
            CVec u = random_u(rng, t.genus());
            CHECK(rel(theta(u, t), direct_sum(u, t.tau())) < 1e-12);
        }
}

TEST_CASE("quasi-periodicity") {
    std::mt19937_64 rng(5);
    double worst1 = 0, worst2 = 0;
    for (const auto& t : fixtures()) {
        const int g = t.genus();
        for (int i = 0; i < 200; ++i) {
            CVec u = random_u(rng, g);
            cplx th = theta(u, t);
            for (int k = 0; k < g; ++k) {
                CVec e = CVec::Zero(g);
                e(k) = 2.0 * M_PI * kI;
                worst1 = std::max(worst1, rel(theta(u + e, t), th));
                CVec tk = t.tau().col(k);
                worst2 = std::max(worst2, rel(theta(u + tk, t), theta_shift_factor(u, t, k) * th));
            }
        }
    }
    CHECK(worst1 < 1e-10);
    CHECK(worst2 < 1e-10);
}

TEST_CASE("shift factor closed form") {
    PeriodMatrix t = PeriodMatrix::scalar(-2 * M_PI);
    CVec u(1);
    u(0) = cplx(0.0, 0.3);
    CHECK(rel(theta_shift_factor(u, t, 0), std::exp(cplx(M_PI, -0.3))) < 1e-15);
    CVec z = CVec::Zero(1), tau = t.tau().col(0);
    CHECK(rel(direct_sum(tau, t.tau()) / direct_sum(z, t.tau()), cplx(std::exp(M_PI))) < 1e-13);
    CHECK(rel(theta(tau, t) / theta(z, t), cplx(std::exp(M_PI))) < 1e-13);
}

TEST_CASE("evenness and conjugation symmetry") {
    std::mt19937_64 rng(9);
    double worst = 0;
    for (const auto& t : fixtures()) {
        CHECK(t.has_real_structure());
        for (int i = 0; i < 200; ++i) {
            CVec u = random_u(rng, t.genus());
            cplx th = theta(u, t);
            CHECK(rel(theta(-u, t), th) < 1e-13);
            worst = std::max(worst, std::abs(std::conj(th) - theta(u.conjugate(), t)) / std::abs(th));
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("directional derivatives against Richardson-combined differences") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const PeriodMatrix t = fixtures()[size_t(i % 3)];
        const int g = t.genus();
        CVec u = random_u(rng, g), d(g);
        for (int k = 0; k < g; ++k) d(k) = cplx(c(rng), c(rng));
        auto f = [&](double h) { return theta(u + h * d, t); };
        auto d1 = [&](double h) { return (f(h) - f(-h)) / (2 * h); };
        auto d2 = [&](double h) { return (f(h) - 2.0 * f(0) + f(-h)) / (h * h); };
        const double h1 = 1e-5, h2 = 1e-4;
        cplx r1 = (h2 * h2 * d1(h1) - h1 * h1 * d1(h2)) / (h2 * h2 - h1 * h1);
        // Second differences carry roundoff ~ eps/h^2, so order 2 uses the wider pair.
        const double k1 = 1e-3, k2 = 2e-3;
        cplx r2 = (k2 * k2 * d2(k1) - k1 * k1 * d2(k2)) / (k2 * k2 - k1 * k1);
        double scale1 = std::max(std::abs(r1), std::abs(f(0))), scale2 = std::max(std::abs(r2), std::abs(f(0)));
        worst = std::max({worst, std::abs(theta_dderiv(u, t, d, 1) - r1) / scale1,
                          std::abs(theta_dderiv(u, t, d, 2) - r2) / scale2});
    }
    CHECK(worst < 1e-7);
}

TEST_CASE("derivative special cases") {
    PeriodMatrix t = PeriodMatrix::scalar(-5.0);
    CVec u(1), z = CVec::Zero(1);
    u(0) = cplx(0.4, 0.7);
    CHECK(std::abs(theta_dderiv(u, t, z, 1)) == 0.0);
    CVec one = CVec::Ones(1);
    CHECK(std::abs(theta_dderiv(z, t, one, 1)) < 1e-16);
    CHECK_THROWS_AS(theta_dderiv(u, t, one, 3), Error);
}

TEST_CASE("genus-one fast path agrees with the general path") {
    std::mt19937_64 rng(23);
    for (double tau : {-9.6046554013, -6.903947540768, -2.0}) {
        PeriodMatrix t = PeriodMatrix::scalar(tau);
        for (int i = 0; i < 50; ++i) {
            CVec u = random_u(rng, 1);
            CHECK(rel(theta1(u(0), tau), theta(u, t)) < 1e-13);
            ThetaJet j = theta1_jet(u(0), tau, cplx(0.3, -0.2), cplx(-0.1, 0.5));
            CVec a(1), b(1);
            a(0) = cplx(0.3, -0.2);
            b(0) = cplx(-0.1, 0.5);
            ThetaJet g = theta_jet(u, t, a, b);
            CHECK(rel(j.value, g.value) < 1e-13);
            CHECK(std::abs(j.d1 - g.d1) < 1e-13 * std::abs(g.value));
            CHECK(std::abs(j.d12 - g.d12) < 1e-13 * std::abs(g.value));
            CHECK(std::abs(g.d1 - theta_dderiv(u, t, a, 1)) < 1e-13 * std::abs(g.value));
        }
    }
}

TEST_CASE("lattice_reduce returns an equivalent representative") {
    PeriodMatrix t = fixtures()[0];
    CVec u(1);
    u(0) = cplx(23.7, -41.0);
    CVec r = lattice_reduce(u, t);
    CHECK(std::abs(r(0).real()) <= 0.5 * std::abs(t.tau()(0, 0).real()) + 1e-12);
    CHECK(std::abs(r(0).imag()) <= M_PI + 1e-12);
    CHECK(rel(theta(r, t) * std::exp(0.0), theta(r, t)) == 0.0);
    // Equivalence: the difference is a lattice vector.
    cplx diff = u(0) - r(0);
    double nb = diff.real() / t.tau()(0, 0).real();
    CHECK(std::abs(nb - std::round(nb)) < 1e-12);
    double na = (diff.imag() - std::round(nb) * t.tau()(0, 0).imag()) / (2 * M_PI);
    CHECK(std::abs(na - std::round(na)) < 1e-12);
}

TEST_CASE("period matrix validation") {
    CMat asym(2, 2);
    asym << -2.0, 0.1, 0.3, -2.0;
    CHECK_THROWS_AS(PeriodMatrix{asym}, Error);
    CHECK_THROWS_AS(PeriodMatrix::scalar(1.0), Error);
    CHECK_THROWS_AS(PeriodMatrix::scalar(-1e-7), Error);
    PeriodMatrix nearly = PeriodMatrix::scalar(-1.5e-6);
    CVec u = CVec::Zero(1);
    try {
        (void)theta(u, nearly);
        FAIL("expected TruncationOverflow");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TruncationOverflow);
    }
}
