#include "plr/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "plr/error.hpp"

namespace plr {

namespace {

constexpr int kMaxIter = 100;
constexpr double kCarlsonTol = 1e-16;

double max_abs_dev(cplx a, std::initializer_list<cplx> xs) {
    double m = 0.0;
    for (cplx x : xs) m = std::max(m, std::abs(a - x));
    return m;
}

void check_modulus(double p) {
    if (!(p >= 0.0 && p < 1.0)) throw Error(ErrorKind::DomainError, "modulus p must lie in [0,1)");
}

void check_amplitude(cplx phi, double cap) {
    if (!std::isfinite(phi.real()) || !std::isfinite(phi.imag()))
        throw Error(ErrorKind::DomainError, "non-finite amplitude");
    if (std::abs(phi.imag()) > cap) throw Error(ErrorKind::DomainError, "|Im phi| exceeds amplitude cap");
}

// The principal sqrt of f(t) is continuous along t in [0,1] iff f never
// meets (-inf, 0]. Sampled with linear interpolation of the crossing.
bool crosses_negative_axis(auto&& f, int samples = 1024) {
    cplx prev = f(0.0);
    for (int k = 1; k <= samples; ++k) {
        cplx cur = f(double(k) / samples);
        if (std::abs(cur) < 1e-300) return true;
        if ((prev.imag() > 0) != (cur.imag() > 0) || cur.imag() == 0.0) {
            double di = cur.imag() - prev.imag();
            double s = di != 0.0 ? -prev.imag() / di : 0.0;
            double re = prev.real() + s * (cur.real() - prev.real());
            if (re <= 0.0) return true;
        }
        prev = cur;
    }
    return false;
}

}  // namespace

EllipticModulus EllipticModulus::from_p(double p) {
    check_modulus(p);
    return {p, std::sqrt((1.0 - p) * (1.0 + p))};
}

EllipticModulus EllipticModulus::from_p_prime(double pp) {
    check_modulus(pp);
    return {std::sqrt((1.0 - pp) * (1.0 + pp)), pp};
}

cplx carlson_rf(cplx x, cplx y, cplx z) {
    int zeros = (x == 0.0) + (y == 0.0) + (z == 0.0);
    if (zeros > 1) throw Error(ErrorKind::DomainError, "R_F with two zero arguments");
    cplx a0 = (x + y + z) / 3.0;
    double q = std::pow(3.0 * kCarlsonTol, -1.0 / 6.0) * max_abs_dev(a0, {x, y, z});
    cplx a = a0;
    double scale = 1.0;
    for (int m = 0;; ++m) {
        if (m > kMaxIter) throw Error(ErrorKind::NonConvergent, "R_F duplication");
        if (scale * q < std::abs(a)) break;
        cplx sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        cplx lam = sx * sy + sx * sz + sy * sz;
        a = 0.25 * (a + lam);
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        scale *= 0.25;
    }
    cplx X = (a - x) / a;
    cplx Y = (a - y) / a;
    cplx Z = -X - Y;
    cplx e2 = X * Y - Z * Z, e3 = X * Y * Z;
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / std::sqrt(a);
}

cplx carlson_rc(cplx x, cplx y) { return carlson_rf(x, y, y); }

cplx carlson_rd(cplx x, cplx y, cplx z) {
    if ((x == 0.0 && y == 0.0) || z == 0.0) throw Error(ErrorKind::DomainError, "R_D argument zero");
    cplx a0 = (x + y + 3.0 * z) / 5.0;
    double q = std::pow(0.25 * kCarlsonTol, -1.0 / 6.0) * max_abs_dev(a0, {x, y, z});
    cplx a = a0, sum = 0.0;
    double scale = 1.0;
    for (int m = 0;; ++m) {
        if (m > kMaxIter) throw Error(ErrorKind::NonConvergent, "R_D duplication");
        if (scale * q < std::abs(a)) break;
        cplx sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z);
        cplx lam = sx * sy + sx * sz + sy * sz;
        sum += scale / (sz * (z + lam));
        a = 0.25 * (a + lam);
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        scale *= 0.25;
    }
    cplx X = (a - x) / a;
    cplx Y = (a - y) / a;
    cplx Z = -(X + Y) / 3.0;
    cplx xy = X * Y, z2 = Z * Z;
    cplx e2 = xy - 6.0 * z2;
    cplx e3 = (3.0 * xy - 8.0 * z2) * Z;
    cplx e4 = 3.0 * (xy - z2) * z2;
    cplx e5 = xy * z2 * Z;
    cplx series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
                  9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
    return scale * series / (a * std::sqrt(a)) + 3.0 * sum;
}

cplx carlson_rj(cplx x, cplx y, cplx z, cplx p) {
    int zeros = (x == 0.0) + (y == 0.0) + (z == 0.0);
    if (zeros > 1 || p == 0.0) throw Error(ErrorKind::DomainError, "R_J argument zero");
    cplx a0 = (x + y + z + 2.0 * p) / 5.0;
    cplx delta = (p - x) * (p - y) * (p - z);
    double q = std::pow(0.25 * kCarlsonTol, -1.0 / 6.0) * max_abs_dev(a0, {x, y, z, p});
    cplx a = a0, sum = 0.0;
    double scale = 1.0;
    for (int m = 0;; ++m) {
        if (m > kMaxIter) throw Error(ErrorKind::NonConvergent, "R_J duplication");
        if (scale * q < std::abs(a)) break;
        cplx sx = std::sqrt(x), sy = std::sqrt(y), sz = std::sqrt(z), sp = std::sqrt(p);
        cplx lam = sx * sy + sx * sz + sy * sz;
        cplx d = (sp + sx) * (sp + sy) * (sp + sz);
        cplx e = scale * scale * scale * delta / (d * d);
        sum += scale / d * carlson_rc(1.0, 1.0 + e);
        a = 0.25 * (a + lam);
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        p = 0.25 * (p + lam);
        scale *= 0.25;
    }
    cplx X = (a - x) / a;
    cplx Y = (a - y) / a;
    cplx Z = (a - z) / a;
    cplx P = -(X + Y + Z) / 2.0;
    cplx e2 = X * Y + X * Z + Y * Z - 3.0 * P * P;
    cplx e3 = X * Y * Z + 2.0 * e2 * P + 4.0 * P * P * P;
    cplx e4 = (2.0 * X * Y * Z + e2 * P + 3.0 * P * P * P) * P;
    cplx e5 = X * Y * Z * P * P;
    cplx series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 -
                  9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0;
    return scale * series / (a * std::sqrt(a)) + 6.0 * sum;
}

double elliptic_K(double p) {
    check_modulus(p);
    return carlson_rf(0.0, (1.0 - p) * (1.0 + p), 1.0).real();
}

double elliptic_E(double p) {
    check_modulus(p);
    double y = (1.0 - p) * (1.0 + p);
    return (carlson_rf(0.0, y, 1.0) - p * p / 3.0 * carlson_rd(0.0, y, 1.0)).real();
}

cplx elliptic_Pi(cplx n, double p) {
    check_modulus(p);
    if (std::abs(1.0 - n) < 1e-14) throw Error(ErrorKind::DomainError, "Pi characteristic 1");
    double y = (1.0 - p) * (1.0 + p);
    return carlson_rf(0.0, y, 1.0) + n / 3.0 * carlson_rj(0.0, y, 1.0, 1.0 - n);
}

namespace {

enum class Kind { F, E, Pi };

cplx incomplete(Kind kind, cplx n, cplx phi, double p, double cap) {
    check_modulus(p);
    check_amplitude(phi, cap);
    if (phi == 0.0) return 0.0;
    double p2 = p * p;
    auto radicand = [&](double t) {
        cplx s = std::sin(t * phi);
        return 1.0 - p2 * s * s;
    };
    if (crosses_negative_axis(radicand))
        throw Error(ErrorKind::BranchAmbiguity, "1 - p^2 sin^2 crosses the principal cut on [0, phi]");
    if (kind == Kind::Pi) {
        double closest = 1e300;
        for (int k = 0; k <= 1024; ++k) {
            cplx s = std::sin(phi * (k / 1024.0));
            closest = std::min(closest, std::abs(1.0 - n * s * s));
        }
        if (closest < 1e-6) throw Error(ErrorKind::BranchAmbiguity, "Pi integrand pole near [0, phi]");
    }
    // Shift Re phi into [-pi/2, pi/2]; each half-period adds a complete integral.
    double m = std::round(phi.real() / std::numbers::pi);
    cplx red = phi - m * std::numbers::pi;
    cplx s = std::sin(red), c = std::cos(red);
    cplx x = c * c, y = 1.0 - p2 * s * s;
    cplx rf = carlson_rf(x, y, 1.0);
    cplx val, full;
    switch (kind) {
    case Kind::F:
        val = s * rf;
        full = elliptic_K(p);
        break;
    case Kind::E:
        val = s * rf - p2 / 3.0 * s * s * s * carlson_rd(x, y, 1.0);
        full = elliptic_E(p);
        break;
    case Kind::Pi:
        val = s * rf + n / 3.0 * s * s * s * carlson_rj(x, y, 1.0, 1.0 - n * s * s);
        full = m != 0.0 ? elliptic_Pi(n, p) : cplx(0.0);
        break;
    }
    return val + 2.0 * m * full;
}

}  // namespace

cplx incomplete_F(cplx phi, double p, double cap) { return incomplete(Kind::F, 0.0, phi, p, cap); }
cplx incomplete_E(cplx phi, double p, double cap) { return incomplete(Kind::E, 0.0, phi, p, cap); }
cplx incomplete_Pi(cplx n, cplx phi, double p, double cap) { return incomplete(Kind::Pi, n, phi, p, cap); }

namespace {

struct RealSnCnDn {
    double sn, cn, dn;
};

// Descending Landen (AGM) transformation for real u and complementary
// parameter mc = 1 - p^2 > 0.
RealSnCnDn sncndn_real(double u, double mc) {
    if (mc == 1.0) return {std::sin(u), std::cos(u), 1.0};
    if (mc == 0.0) return {std::tanh(u), 1.0 / std::cosh(u), 1.0 / std::cosh(u)};
    constexpr int kLevels = 16;
    std::array<double, kLevels> em{}, en{};
    double a = 1.0, c = 1.0, dn = 1.0, emc = mc;
    int levels = 0;
    bool converged = false;
    for (int i = 0; i < kLevels; ++i) {
        levels = i + 1;
        em[i] = a;
        emc = std::sqrt(emc);
        en[i] = emc;
        c = 0.5 * (a + emc);
        if (std::abs(a - emc) <= 1e-9 * a) {
            converged = true;
            break;
        }
        emc *= a;
        a = c;
    }
    if (!converged) throw Error(ErrorKind::NonConvergent, "AGM stalled in sn/cn/dn");
    double v = u * c;
    double sn = std::sin(v), cn = std::cos(v);
    if (sn != 0.0) {
        double r = cn / sn;
        c *= r;
        for (int i = levels - 1; i >= 0; --i) {
            double b = em[i];
            r *= c;
            c *= dn;
            dn = (en[i] + r) / (b + r);
            r = c / b;
        }
        r = 1.0 / std::sqrt(c * c + 1.0);
        sn = sn >= 0.0 ? r : -r;
        cn = c * sn;
    }
    return {sn, cn, dn};
}

}  // namespace

SnCnDn jacobi_sn_cn_dn(cplx u, double p) {
    check_modulus(p);
    double m = p * p, mc = (1.0 - p) * (1.0 + p);
    RealSnCnDn r = sncndn_real(u.real(), mc);
    if (u.imag() == 0.0) return {r.sn, r.cn, r.dn};
    // Imaginary part through the complementary modulus and the addition theorem.
    RealSnCnDn i = sncndn_real(u.imag(), m);
    double den = i.cn * i.cn + m * r.sn * r.sn * i.sn * i.sn;
    if (den == 0.0) throw Error(ErrorKind::DomainError, "sn/cn/dn pole");
    cplx sn(r.sn * i.dn, r.cn * r.dn * i.sn * i.cn);
    cplx cn(r.cn * i.cn, -r.sn * r.dn * i.sn * i.dn);
    cplx dn(r.dn * i.cn * i.dn, -m * r.sn * r.cn * i.sn);
    return {sn / den, cn / den, dn / den};
}

cplx jacobi_zeta(cplx u, double p) {
    check_modulus(p);
    if (p == 0.0) return 0.0;
    double K = elliptic_K(p), Kp = elliptic_K(std::sqrt((1.0 - p) * (1.0 + p)));
    double nome = std::exp(-std::numbers::pi * Kp / K);
    cplx v = std::numbers::pi * u / (2.0 * K);
    // Z = (pi / 2K) theta4'(v) / theta4(v)
    cplx num = 0.0, den = 1.0;
    double sign = -1.0;
    for (int n = 1; n < 1000; ++n) {
        double qn = std::pow(nome, double(n) * n);
        cplx tc = 2.0 * sign * qn * std::cos(2.0 * n * v);
        cplx ts = -4.0 * sign * n * qn * std::sin(2.0 * n * v);
        den += tc;
        num += ts;
        double bound = qn * std::exp(2.0 * n * std::abs(v.imag()));
        if (bound < 1e-18 * std::max(1.0, std::abs(den)) && 2.0 * n * std::abs(v.imag()) < -std::log(nome) * n * n)
            break;
        sign = -sign;
        if (n == 999) throw Error(ErrorKind::NonConvergent, "theta4 series in jacobi_zeta");
    }
    return std::numbers::pi / (2.0 * K) * num / den;
}

}  // namespace plr
