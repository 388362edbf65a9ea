#pragma once

// Elliptic integrals and Jacobi functions with complex arguments.
// Every routine takes the modulus p, never the parameter m = p^2.

#include <complex>

namespace plr {

using cplx = std::complex<double>;

struct EllipticModulus {
    double p = 0.0;
    double p_prime = 1.0;

    static EllipticModulus from_p(double p);
    static EllipticModulus from_p_prime(double p_prime);
};

cplx carlson_rf(cplx x, cplx y, cplx z);
cplx carlson_rd(cplx x, cplx y, cplx z);
cplx carlson_rj(cplx x, cplx y, cplx z, cplx p);
cplx carlson_rc(cplx x, cplx y);

double elliptic_K(double p);
double elliptic_E(double p);
// Complete third kind, 1/((1 - n sin^2) sqrt(1 - p^2 sin^2)) over [0, pi/2].
cplx elliptic_Pi(cplx n, double p);

inline constexpr double kDefaultImAmplitudeCap = 50.0;

// Integrals along the straight segment [0, phi] of the amplitude plane.
// BranchAmbiguity is thrown when the radicand 1 - p^2 sin^2 crosses the
// principal cut on that segment (or, for Pi, 1 - n sin^2 comes near zero).
cplx incomplete_F(cplx phi, double p, double im_cap = kDefaultImAmplitudeCap);
cplx incomplete_E(cplx phi, double p, double im_cap = kDefaultImAmplitudeCap);
cplx incomplete_Pi(cplx n, cplx phi, double p, double im_cap = kDefaultImAmplitudeCap);

struct SnCnDn {
    cplx sn, cn, dn;
};

SnCnDn jacobi_sn_cn_dn(cplx u, double p);
cplx jacobi_zeta(cplx u, double p);

}  // namespace plr
