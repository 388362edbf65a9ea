#include "plr/closure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "plr/error.hpp"

namespace plr {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

double nearest_integer_distance(double x) { return std::abs(x - std::round(x)); }

double critical_residual(ClosureKind kind, double L0, const SpectralData& d) {
    if (kind == ClosureKind::S) return std::abs(L0 * L0 - 0.5 * d.c * L0 - d.c1);
    double x = 1.0 / L0;
    return std::abs(x * x - 0.5 * d.d * x - d.c2);
}

// J = Z(u) - k2 sn cn dn / (1 - k2 sn^2) at u = F(phi, p).
cplx jacobi_J(ClosureKind kind, double L0, const SpectralData& d) {
    const cplx l2 = d.branch.lambda2;
    const double p = d.modulus.p, pp = d.modulus.p_prime;
    const cplx hb = std::conj(d.h);
    cplx k2 = kind == ClosureKind::S ? p * p / (1.0 - hb) : p * p / (1.0 - (l2 / std::conj(l2)) * hb);
    cplx X = (L0 - l2) / (L0 - std::conj(l2)) / d.h;
    cplx phi = std::asin(std::sqrt(1.0 - X * pp * pp) / p);
    cplx u = incomplete_F(phi, p);
    SnCnDn e = jacobi_sn_cn_dn(u, p);
    return jacobi_zeta(u, p) - k2 * e.sn * e.cn * e.dn / (1.0 - k2 * e.sn * e.sn);
}

}  // namespace

const char* to_string(ClosureKind k) { return k == ClosureKind::S ? "s" : "t"; }

std::vector<double> critical_lambda(ClosureKind kind, const SpectralData& d) {
    // s: L^2 - (c/2) L - c1 = 0.  t: x^2 - (d/2) x - c2 = 0 with x = 1/L.
    double b = kind == ClosureKind::S ? 0.5 * d.c : 0.5 * d.d;
    double c0 = kind == ClosureKind::S ? d.c1 : d.c2;
    double disc = b * b + 4.0 * c0;
    if (disc < 0.0) throw Error(ErrorKind::NoRealRoot, "critical-point quadratic has negative discriminant");
    double sq = std::sqrt(disc);
    // Cancellation-free pair of roots.
    double big = 0.5 * (b + std::copysign(sq, b == 0.0 ? 1.0 : b));
    std::vector<double> xs;
    if (big != 0.0) {
        xs.push_back(big);
        xs.push_back(-c0 / big);
    } else {
        xs.push_back(0.0);
    }
    std::vector<double> out;
    for (double x : xs) {
        if (!(x > 0.0)) continue;
        double L = kind == ClosureKind::S ? x : 1.0 / x;
        bool on_cut = false;
        for (cplx l : {d.branch.lambda1, d.branch.lambda2})
            if (std::abs(L - l.real()) < 1e-12) on_cut = true;
        if (!on_cut) out.push_back(L);
    }
    if (out.empty()) throw Error(ErrorKind::NoPositiveRoot, "no admissible positive critical point");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double quantized_period(ClosureKind kind, int n, const SpectralData& d) {
    if (n <= 0) throw Error(ErrorKind::InvalidInput, "quantisation index must be positive");
    if (kind == ClosureKind::S) {
        if (!(d.U > 0)) throw Error(ErrorKind::InvalidInput, "U must be positive");
        return 4.0 * kPi * n / d.U;
    }
    if (!(d.V < 0)) throw Error(ErrorKind::InvalidInput, "V must be negative");
    return -4.0 * kPi * n / d.V;
}

ClosureReport phase_check(ClosureKind kind, double L0, double period, const SpectralData& d, ClosureTolerances tol) {
    if (!(L0 > 0.0)) throw Error(ErrorKind::InvalidInput, "Lambda0 must be positive");
    for (cplx l : {d.branch.lambda1, d.branch.lambda2})
        if (std::abs(L0 - l.real()) < 1e-12) throw Error(ErrorKind::InvalidInput, "Lambda0 is a branch-point abscissa");
    ClosureReport rep;
    rep.kind = kind;
    rep.Lambda0 = L0;
    rep.period = period;
    rep.tol = tol;
    PointIntegrals pi = point_integrals({cplx(L0, 0.0), 1, false}, d);
    cplx om = kind == ClosureKind::S ? pi.omega1 : pi.omega2;
    if (std::abs(om.imag()) > 1e-8) throw Error(ErrorKind::RealityViolation, "quasimomentum not real on the real slice");
    rep.quasimomentum = om.real();
    rep.critical_residual = critical_residual(kind, L0, d);
    double phase = period * rep.quasimomentum / (2.0 * kPi);
    rep.phase_distance = nearest_integer_distance(phase);

    // The Jacobi form fixes Omega modulo the positive scale U (or -V); it is
    // compared at unit index and the representative nearest the quadrature
    // value then gives the phase at the requested period.
    const double scale = kind == ClosureKind::S ? d.U : -d.V;
    const double unit = 4.0 * kPi / scale;
    double nu = period / unit;
    rep.n_or_m = int(std::lround(nu));
    cplx J = jacobi_J(kind, L0, d);
    cplx direct_unit = std::exp(0.5 * kI * unit * rep.quasimomentum);
    cplx e = std::exp(2.0 * d.K * J), best = e;
    double mis = 1e300;
    // Sign, orientation and conjugation are the branch freedoms of the Jacobi data.
    for (cplx cand : {e, std::conj(e)})
        for (double sg : {1.0, -1.0})
            if (std::abs(direct_unit - sg * cand) < mis) {
                mis = std::abs(direct_unit - sg * cand);
                best = sg * cand;
            }
    cplx omega_j = -2.0 * kI * std::log(best) / unit;
    omega_j += scale * std::round((rep.quasimomentum - omega_j.real()) / scale);
    rep.direct_phase = std::exp(0.5 * kI * period * rep.quasimomentum);
    rep.jacobi_phase = std::exp(0.5 * kI * period * omega_j);
    rep.jacobi_mismatch = std::abs(rep.direct_phase - rep.jacobi_phase);
    if (mis > 1e-4 || rep.jacobi_mismatch > 1e-4)
        throw Error(ErrorKind::JacobiFormMismatch,
                    "direct and Jacobi-form phases disagree by " + std::to_string(std::max(mis, rep.jacobi_mismatch)));
    rep.passed = rep.critical_residual < tol.critical && rep.phase_distance < tol.phase;
    return rep;
}

namespace {

struct Eval {
    double theta;
    SpectralData data;
    ClosureReport rep;
    double phase;  // period * Omega / (2 pi)
};

Eval evaluate(ClosureKind kind, const BranchFamily& fam, int n, double theta, ClosureTolerances tol) {
    SpectralData d = genus1_spectral(fam.param(theta), fam.divisor);
    std::vector<double> roots;
    try {
        roots = critical_lambda(kind, d);
    } catch (const Error& e) {
        throw Error(ErrorKind::CriticalPointLost, std::string("at theta = ") + std::to_string(theta) + ": " + e.what());
    }
    int idx = fam.root_index < 0 ? int(roots.size()) - 1 : fam.root_index;
    if (idx >= int(roots.size()))
        throw Error(ErrorKind::CriticalPointLost, "selected critical root vanished at theta = " + std::to_string(theta));
    double L0 = roots[idx];
    double period = quantized_period(kind, n, d);
    ClosureReport rep = phase_check(kind, L0, period, d, tol);
    return {theta, d, rep, period * rep.quasimomentum / (2.0 * kPi)};
}

SearchResult finish(const Eval& e, const BranchFamily& fam, int evals) {
    return {e.theta, fam.param(e.theta), e.data, e.rep, evals};
}

}  // namespace

SearchResult search_phase(ClosureKind kind, const BranchFamily& fam, int n, double tol, ClosureTolerances rtol) {
    if (!(fam.hi > fam.lo)) throw Error(ErrorKind::InvalidInput, "empty bracket");
    int evals = 0;
    auto ev = [&](double th) {
        ++evals;
        return evaluate(kind, fam, n, th, rtol);
    };
    const double mid = 0.5 * (fam.lo + fam.hi);
    Eval m = ev(mid);
    if (m.rep.passed && m.rep.phase_distance < tol) return finish(m, fam, evals);

    constexpr int kScan = 16;
    std::vector<Eval> scan;
    for (int i = 0; i <= kScan; ++i) scan.push_back(ev(fam.lo + (fam.hi - fam.lo) * i / kScan));

    // Integer levels crossed continuously between neighbours; prefer the one nearest the midpoint.
    int best = -1;
    double best_level = 0, best_gap = 1e300;
    for (int i = 0; i < kScan; ++i) {
        double a = scan[i].phase, b = scan[i + 1].phase;
        if (std::abs(b - a) >= 0.5) continue;
        double k = std::round(0.5 * (a + b));
        if ((a - k) * (b - k) > 0.0) continue;
        double gap = std::abs(0.5 * (scan[i].theta + scan[i + 1].theta) - mid);
        if (gap < best_gap) {
            best_gap = gap;
            best = i;
            best_level = k;
        }
    }
    if (best >= 0) {
        Eval a = scan[best], b = scan[best + 1];
        double fa = a.phase - best_level;
        for (int it = 0; it < 200; ++it) {
            if (std::abs(fa) < tol) return finish(a, fam, evals);
            if (std::abs(b.phase - best_level) < tol) return finish(b, fam, evals);
            double th = 0.5 * (a.theta + b.theta);
            if (th <= std::min(a.theta, b.theta) || th >= std::max(a.theta, b.theta)) break;
            Eval c = ev(th);
            double fc = c.phase - best_level;
            if ((fc > 0) == (fa > 0)) {
                a = c;
                fa = fc;
            } else {
                b = c;
            }
        }
        const Eval& e = std::abs(a.phase - best_level) < std::abs(b.phase - best_level) ? a : b;
        if (e.rep.phase_distance < rtol.phase && e.rep.passed) return finish(e, fam, evals);
    }

    // No crossing: golden-section search of the phase distance around the best scan point.
    int ib = 0;
    for (int i = 1; i <= kScan; ++i)
        if (scan[i].rep.phase_distance < scan[ib].rep.phase_distance) ib = i;
    double lo = scan[std::max(ib - 1, 0)].theta, hi = scan[std::min(ib + 1, kScan)].theta;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    Eval e1 = ev(x1), e2 = ev(x2);
    for (int it = 0; it < 100 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
        if (e1.rep.phase_distance < e2.rep.phase_distance) {
            hi = x2;
            x2 = x1;
            e2 = e1;
            x1 = hi - g * (hi - lo);
            e1 = ev(x1);
        } else {
            lo = x1;
            x1 = x2;
            e1 = e2;
            x2 = lo + g * (hi - lo);
            e2 = ev(x2);
        }
    }
    const Eval& e = e1.rep.phase_distance < e2.rep.phase_distance ? e1 : e2;
    if (e.rep.phase_distance < tol && e.rep.passed) return finish(e, fam, evals);
    throw Error(ErrorKind::NoRootInBracket,
                "phase distance does not vanish in the bracket (best " + std::to_string(e.rep.phase_distance) + ")");
}

}  // namespace plr
