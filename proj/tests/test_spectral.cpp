#include <doctest.h>

#include "oracle.hpp"
#include "plr/error.hpp"
#include "plr/spectral.hpp"

using namespace plr;
using oracle::rel;

namespace {

const cplx kI(0.0, 1.0);
const BranchData kEx1{{0.454, 0.324}, {-0.454, 0.095}};
const BranchData kEx2{{1.0, 0.813211}, {-1.0, 0.813211}};

const SpectralData& ex1() {
    static const SpectralData d = genus1_spectral(kEx1);
    return d;
}
const SpectralData& ex2() {
    static const SpectralData d = genus1_spectral(kEx2);
    return d;
}

// Closed forms evaluated directly from branch points.
struct Closed {
    double p_prime, p, mu0, U, V, tau;
};
Closed closed(const BranchData& b) {
    Closed c;
    cplx h = (b.lambda1 - b.lambda2) / (b.lambda1 - std::conj(b.lambda2));
    c.p_prime = std::abs(h);
    c.p = std::sqrt(1.0 - c.p_prime * c.p_prime);
    c.mu0 = std::abs(b.lambda1) * std::abs(b.lambda2);
    double len = std::abs(b.lambda1 - std::conj(b.lambda2));
    double K = elliptic_K(c.p), Kp = elliptic_K(c.p_prime);
    c.U = M_PI * len / K;
    c.V = -M_PI * len / (c.mu0 * K);
    c.tau = -2.0 * M_PI * Kp / K;
    return c;
}

}  // namespace

TEST_CASE("branch data validation") {
    CHECK_NOTHROW(kEx1.validate());
    auto kind_of = [](const BranchData& b) {
        try {
            (void)genus1_spectral(b);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::IoError;
    };
    CHECK(kind_of({{0.5, 0.3}, {0.5, -0.3}}) == ErrorKind::InvalidBranchData);
    CHECK(kind_of({{0.5, 0.3}, {0.5, 0.3}}) == ErrorKind::InvalidBranchData);
    CHECK(kind_of({{0.5, 0.3}, {-0.5, -0.2}}) == ErrorKind::InvalidBranchData);
    CHECK(kind_of({{0.5, 0.3}, {0.0, 0.2}}) == ErrorKind::InvalidBranchData);
    CHECK(kind_of({{0.5, 1.0}, {-0.5, 1e-13}}) == ErrorKind::ModulusDegenerate);
}

TEST_CASE("sheet function") {
    const SpectralData& d = ex1();
    CHECK(std::abs(d.mu0 - 0.258705709198695514) < 1e-15);
    CHECK(std::abs(d.mu0 - std::abs(kEx1.lambda1) * std::abs(kEx1.lambda2)) < 1e-15);
    for (cplx l : {cplx(0.3, 0.7), cplx(-2.0, -0.1), cplx(0.0, 0.0), cplx(5.0, 3.0)}) {
        cplx quartic = 1.0;
        for (cplx b : {kEx1.lambda1, kEx1.lambda2}) quartic *= (l - b) * (l - std::conj(b));
        CHECK(rel(mu_plus(l, kEx1) * mu_plus(l, kEx1), quartic) < 1e-12);
        CHECK(rel(mu({l, -1, false}, kEx1), -mu_plus(l, kEx1)) == 0.0);
    }
    CHECK(std::abs(mu_plus(1e4, kEx1) / 1e8 - 1.0) < 1e-3);
    CurvePoint P0p = p0_point(d, +1), P0m = p0_point(d, -1);
    CHECK(std::abs(mu(P0p, kEx1) - d.mu0) < 1e-15);
    CHECK(std::abs(mu(P0m, kEx1) + d.mu0) < 1e-15);
    cplx nb = std::conj(kEx1.lambda2) + cplx(1e-9, 0.0);
    CHECK(std::abs(mu({nb, 1, false}, kEx1)) < 1e-4);
    CHECK_THROWS_AS(mu({std::conj(kEx1.lambda2), 1, false}, kEx1), Error);
}

TEST_CASE("elliptic parametrisation of both fixtures") {
    for (const auto* b : {&kEx1, &kEx2}) {
        const SpectralData& d = b == &kEx1 ? ex1() : ex2();
        Closed c = closed(*b);
        CHECK(d.modulus.p_prime == doctest::Approx(c.p_prime).epsilon(1e-15));
        CHECK(d.modulus.p == doctest::Approx(c.p).epsilon(1e-14));
        CHECK(d.tau == doctest::Approx(c.tau).epsilon(1e-14));
        CHECK(d.U == doctest::Approx(c.U).epsilon(1e-14));
        CHECK(d.V == doctest::Approx(c.V).epsilon(1e-14));
        CHECK(rel(d.K_minus, cplx(d.tau / 2, 0.0)) < 1e-15);
        CHECK(d.tau < 0.0);
        CHECK(d.U > 0.0);
        CHECK(d.V < 0.0);
    }
    CHECK(ex1().modulus.p_prime == doctest::Approx(0.936420353219136265).epsilon(1e-15));
    CHECK(ex2().modulus.p_prime == doctest::Approx(0.775843957198334455).epsilon(1e-15));
    CHECK(ex2().modulus.p == doctest::Approx(0.630924840277214774).epsilon(1e-14));
    CHECK(std::abs(ex2().c) < 1e-15);
}

TEST_CASE("frozen constants") {
    const SpectralData& a = ex1();
    CHECK(a.tau == doctest::Approx(-9.6046554013).epsilon(1e-10));
    CHECK(a.U == doctest::Approx(1.935922488739).epsilon(1e-11));
    CHECK(a.V == doctest::Approx(-7.483106943155).epsilon(1e-11));
    CHECK(std::abs(a.c3 - 0.50955811654508) < 1e-11);
    CHECK(a.E_const == doctest::Approx(-1.0191162331).epsilon(1e-9));
    CHECK(a.H_const == doctest::Approx(-3.9392877577).epsilon(1e-9));
    CHECK(a.sqrt_beta() == doctest::Approx(0.0448006507).epsilon(1e-8));
    const SpectralData& b = ex2();
    CHECK(b.tau == doctest::Approx(-6.903947540768).epsilon(1e-11));
    CHECK(b.U == doctest::Approx(4.559511951581).epsilon(1e-11));
    CHECK(b.V == doctest::Approx(-2.744524564538).epsilon(1e-11));
    CHECK(std::abs(b.c3 - 1.13987798789515) < 1e-11);
    CHECK(b.E_const == doctest::Approx(-2.2797559758).epsilon(1e-9));
    CHECK(b.H_const == doctest::Approx(-1.3722622823).epsilon(1e-9));
    CHECK(b.sqrt_beta() == doctest::Approx(0.3804594119).epsilon(1e-8));
}

TEST_CASE("a-periods are normalised") {
    for (const SpectralData* d : {&ex1(), &ex2()}) {
        CHECK(std::abs(a_period(Differential::Holomorphic, *d) - 2.0 * M_PI * kI) < 1e-8);
        for (auto k : {Differential::Omega1, Differential::Omega2, Differential::Omega3})
            CHECK(std::abs(a_period(k, *d)) < 1e-8);
    }
}

TEST_CASE("b-periods match the closed forms") {
    for (const auto* b : {&kEx1, &kEx2}) {
        const SpectralData& d = b == &kEx1 ? ex1() : ex2();
        Closed c = closed(*b);
        CHECK(rel(b_period(Differential::Omega1, d), c.U) < 1e-7);
        CHECK(rel(b_period(Differential::Omega2, d), c.V) < 1e-7);
        CHECK(rel(b_period(Differential::Holomorphic, d), c.tau) < 1e-8);
        // r is the Abel image of P_inf+, i.e. minus the dOmega3 b-period modulo the lattice.
        CHECK(lattice_distance(d.r + b_period(Differential::Omega3, d), d) < 1e-8);
        CHECK(lattice_distance(d.r - r_closed_form_amplitude(d), d) < 1e-8);
    }
    CHECK(rel(ex1().r, cplx(-6.0828696802, M_PI)) < 1e-10);
    CHECK(rel(ex2().r, cplx(-3.4519737704, M_PI)) < 1e-10);
}

TEST_CASE("c3 normalises dOmega3") {
    for (const SpectralData* d : {&ex1(), &ex2()}) {
        CHECK(std::abs(d->c3.imag()) < 1e-12);
        CHECK(std::abs(a_period(Differential::Omega3, *d)) < 1e-8);
    }
}

TEST_CASE("residues of dOmega3 at the points over infinity") {
    for (const SpectralData* d : {&ex1(), &ex2()}) {
        CHECK(std::abs(residue_at_infinity(Differential::Omega3, +1, *d) + 1.0) < 1e-8);
        CHECK(std::abs(residue_at_infinity(Differential::Omega3, -1, *d) - 1.0) < 1e-8);
    }
}

TEST_CASE("asymptotic constants are real and agree with radius extrapolation") {
    const SpectralData& d = ex1();
    double e34 = E_richardson(d, 1e3, 1e4), e45 = E_richardson(d, 1e4, 1e5);
    CHECK(std::abs(e34 - e45) < 1e-7);
    CHECK(std::abs(d.E_const - e45) < 1e-7);
    CHECK(std::abs(d.E_const - e34) < 1e-7);
    CHECK(std::exp(d.log_beta) > 0.0);
    // Both fixtures are symmetric under l -> -conj(l) only for the second, where H = F.
    CHECK(std::abs(ex2().H_const - ex2().F_const) < 1e-6);
}

TEST_CASE("integrals from the base point") {
    const SpectralData& d = ex1();
    CurvePoint base{std::conj(kEx1.lambda2), 1, false};
    for (auto k : {Differential::Omega1, Differential::Omega2, Differential::Omega3, Differential::Holomorphic})
        CHECK(std::abs(abelian_integral(k, base, d).value) == 0.0);
    auto v = abelian_integral(Differential::Omega1, {cplx(0.2, 0.5), 1, false}, d);
    CHECK(v.error <= 1e-9);
}

TEST_CASE("Abel map at the marked points") {
    const SpectralData& d = ex1();
    CHECK(std::abs(abel_map(CurvePoint::infinity(-1), d).value) < 1e-12);
    CHECK(lattice_distance(abel_map(CurvePoint::infinity(+1), d).value - d.r, d) < 1e-8);
    for (double x : {0.2, 0.7, 1.5, 4.0}) {
        AbelValue a = abel_map({cplx(x, 0.0), 1, false}, d);
        CHECK(lattice_distance(std::conj(a.reduced) - a.reduced, d) < 1e-8);
        CHECK(lattice_distance(a.value - a.reduced, d) < 1e-12);
    }
}

TEST_CASE("path independence") {
    const SpectralData& d = ex1();
    const cplx b = std::conj(kEx1.lambda2);
    CurvePoint target{cplx(0.2, 0.45), 1, false};
    // Homotopic: two routes through the same gap between the cuts.
    PathSpec p1{{b, cplx(-0.454, -0.2), cplx(0.2, -0.2), target.lambda}, 1};
    PathSpec p2{{b, cplx(-0.454, -0.5), cplx(-0.1, -0.5), cplx(-0.1, 0.1), target.lambda}, 1};
    cplx a1 = abel_map(target, d, p1).value, a2 = abel_map(target, d, p2).value;
    CHECK(std::abs(a1 - a2) < 1e-9);
    // Non-homotopic: the second route winds around cut 1 before returning.
    PathSpec p3{{b, cplx(-0.454, -0.5), cplx(1.0, -0.5), cplx(1.0, 0.8), cplx(0.2, 0.8), target.lambda}, 1};
    cplx a3 = abel_map(target, d, p3).value;
    CHECK(std::abs(a3 - a1) > 1.0);
    CHECK(lattice_distance(a3 - a1, d) < 1e-8);
}

TEST_CASE("paths through a cut are rejected") {
    const SpectralData& d = ex1();
    PathSpec bad{{std::conj(kEx1.lambda2), cplx(-0.454, -0.3), cplx(0.6, 0.0)}, 1};
    try {
        (void)abel_map({cplx(0.6, 0.0), 1, false}, d, bad);
        FAIL("expected PathThroughCut");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PathThroughCut);
    }
}

TEST_CASE("divisor reality") {
    for (int eps : {0, 1})
        for (double y : {0.0, 0.37, -1.2}) {
            SpectralData d = genus1_spectral(kEx1, {eps, y});
            CHECK(rel(d.D, eps * d.tau / 2.0 + kI * y) < 1e-15);
            CHECK(lattice_distance(std::conj(d.D) + d.D, d) < 1e-12);
        }
}

TEST_CASE("narrow gaps between tall cuts") {
    // Integration starts at a branch point of modulus ~2 while the gap is 0.1;
    // the endpoint offset must be carried exactly.
    for (BranchData b : {BranchData{{0.1, 2.0}, {-0.1, 2.0}}, BranchData{{0.05, 0.3}, {-0.05, 0.3}},
                         BranchData{{0.01, 1.0}, {-0.01, 1.0}}}) {
        SpectralData d = genus1_spectral(b);
        Closed c = closed(b);
        CHECK(rel(d.U, c.U) < 1e-12);
        CHECK(std::isfinite(d.E_const));
        CHECK(std::isfinite(d.log_beta));
        // Symmetric data: l -> -conj(l) fixes the curve, so H = F.
        CHECK(std::abs(d.H_const - d.F_const) < 1e-6);
        double e34 = E_richardson(d, 1e3, 1e4);
        CHECK(std::abs(d.E_const - e34) < 1e-6);
    }
}
