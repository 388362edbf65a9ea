#pragma once

// Genus-one spectral curve mu^2 = prod_j (l - l_j)(l - conj l_j) with
// vertical cuts [conj l_j, l_j]. Sheet +1 is the branch with mu ~ +l^2 at
// infinity; a CurvePoint's mu is sheet * mu_plus(l).

#include <Eigen/Core>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "plr/specfun.hpp"
#include "plr/theta.hpp"

namespace plr {

struct BranchData {
    cplx lambda1;
    cplx lambda2;
    void validate() const;
};

struct CurvePoint {
    cplx lambda;
    int sheet = 1;
    bool at_infinity = false;

    static CurvePoint infinity(int sheet) { return {cplx(0.0), sheet, true}; }
};

struct Divisor {
    int epsilon = 0;
    double y = 0.0;
};

struct PathSpec {
    // Polyline from the base point conj(lambda2); prepended when missing.
    std::vector<cplx> waypoints;
    int sheet = 1;
};

struct SpectralData {
    BranchData branch;
    Divisor divisor;
    cplx h;
    EllipticModulus modulus;
    double K = 0, K_prime = 0, E_complete = 0;  // K(p), K(p'), E(p)
    double tau = 0;                              // real negative
    double mu0 = 0, c = 0, d = 0, c1 = 0, c2 = 0;
    cplx c3;
    double U = 0, V = 0;
    cplx r;  // A_-(P_inf+), the shift entering psi and q
    double E_const = 0, H_const = 0, F_const = 0, log_beta = 0;
    cplx K_minus, D;
    cplx abel_inf;        // integral of omega from the base point to P_inf+
    double omega_norm = 0;  // omega = omega_norm dl / mu
    double eps_cut = 0;
    CurvePoint base_point;

    PeriodMatrix period_matrix() const { return PeriodMatrix::scalar(cplx(tau, 0.0)); }
    double sqrt_beta() const;
};

enum class Differential { Omega1 = 1, Omega2 = 2, Omega3 = 3, Holomorphic = 0 };

cplx mu_plus(cplx lambda, const BranchData& b);
cplx mu(const CurvePoint& P, const BranchData& b);
// The point over 0 with mu = +mu0 (resp. -mu0).
CurvePoint p0_point(const SpectralData& data, int sign);

SpectralData genus1_spectral(const BranchData& branch, Divisor divisor = {});

// Numerator f of dOmega = f dl / mu.
cplx differential_numerator(Differential kind, cplx lambda, const SpectralData& data);

PathSpec default_path(const CurvePoint& target, const SpectralData& data);
void validate_path(const PathSpec& path, const SpectralData& data, bool avoid_origin);

struct PointIntegrals {
    cplx omega1, omega2, omega3, abel;  // abel measured from the base point
    double error = 0.0;
};

// All four integrals along one path. Omega1/Omega3 diverge at infinity and are
// returned as NaN there; Omega2 at the origin likewise.
PointIntegrals point_integrals(const CurvePoint& target, const SpectralData& data,
                               const std::optional<PathSpec>& path = std::nullopt);

// Continues the integrals at `from` along the straight segment to `to` on the
// given sheet; SheetCrossing if the segment meets a cut.
PointIntegrals extend_integrals(const PointIntegrals& at_from, cplx from, cplx to, int sheet,
                                const SpectralData& data);

struct IntegralValue {
    cplx value;
    double error;
};

IntegralValue abelian_integral(Differential kind, const CurvePoint& target, const SpectralData& data,
                               const std::optional<PathSpec>& path = std::nullopt);

struct AbelValue {
    cplx value;    // path representative of A_-(P)
    cplx reduced;  // modulo 2 pi i Z + tau Z
};
AbelValue abel_map(const CurvePoint& target, const SpectralData& data,
                   const std::optional<PathSpec>& path = std::nullopt);

// Cycle integrals of f dl / mu. a: counterclockwise loop around cut 1.
// b: twice the sheet +1 segment from conj(lambda2) to conj(lambda1).
cplx a_period(Differential kind, const SpectralData& data);
cplx b_period(Differential kind, const SpectralData& data);
// Loop integral around P_inf on the given sheet, divided by 2 pi i, as seen
// from the local parameter z = 1/l (orientation positive in z).
cplx residue_at_infinity(Differential kind, int sheet, const SpectralData& data);

// Distance of z to the lattice 2 pi i Z + tau Z.
double lattice_distance(cplx z, const SpectralData& data);
cplx lattice_reduce_scalar(cplx z, const SpectralData& data);

// Closed forms for r: the printed 2 pi F(phi, p')/K(p) with phi = asin sqrt(h/|h|),
// and the amplitude-at-infinity form 2 pi i F(phi_inf, p)/K(p).
cplx r_closed_form_printed(const SpectralData& data);
cplx r_closed_form_amplitude(const SpectralData& data);
cplx c3_closed_form_printed(const SpectralData& data);

// Richardson oracle for E: -2 (Omega1 - l) at l = R on the + sheet,
// extrapolated from R1 and R2 assuming a 1/R error term.
double E_richardson(const SpectralData& data, double R1, double R2);

}  // namespace plr
