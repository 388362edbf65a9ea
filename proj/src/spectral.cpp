#include "plr/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>

#include "plr/error.hpp"
#include "plr/quadrature.hpp"

namespace plr {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);
using Vec4 = Eigen::Matrix<cplx, 4, 1>;

// One factor of mu_plus; its cut is exactly the vertical segment over Re lj.
cplx sheet_factor(cplx lambda, cplx lj) {
    cplx w = lambda - lj.real();
    return w * std::sqrt((lambda - lj) * (lambda - std::conj(lj)) / (w * w));
}

std::array<cplx, 2> branch_array(const BranchData& b) { return {b.lambda1, b.lambda2}; }

double segment_point_distance(cplx a, cplx b, cplx z) {
    cplx d = b - a;
    double len2 = std::norm(d);
    double t = len2 > 0 ? std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0) : 0.0;
    return std::abs(a + t * d - z);
}

double cross(cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); }

bool segments_intersect(cplx a, cplx b, cplx c, cplx d) {
    double d1 = cross(d - c, a - c), d2 = cross(d - c, b - c);
    double d3 = cross(b - a, c - a), d4 = cross(b - a, d - a);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

double segment_distance(cplx a, cplx b, cplx c, cplx d) {
    if (segments_intersect(a, b, c, d)) return 0.0;
    return std::min({segment_point_distance(a, b, c), segment_point_distance(a, b, d),
                     segment_point_distance(c, d, a), segment_point_distance(c, d, b)});
}

bool is_branch_point(cplx z, const BranchData& b) {
    for (cplx lj : branch_array(b))
        if (std::abs(z - lj) < 1e-12 || std::abs(z - std::conj(lj)) < 1e-12) return true;
    return false;
}

// mu_plus near a branch point e with lambda - e = off known exactly; forming
// lambda - e by subtraction loses all digits once |off| ~ eps |e|.
cplx mu_plus_near(cplx lambda, cplx e, cplx off, const BranchData& b) {
    cplx m = 1.0;
    for (cplx lj : branch_array(b)) {
        cplx w = lambda - lj.real();
        cplx d1 = std::abs(e - lj) < 1e-12 ? off : lambda - lj;
        cplx d2 = std::abs(e - std::conj(lj)) < 1e-12 ? off : lambda - std::conj(lj);
        m *= w * std::sqrt(d1 * d2 / (w * w));
    }
    return m;
}

// Integrand vector (Omega1, Omega2, Omega3, omega) at lambda on a sheet.
Vec4 integrand(cplx lambda, int sheet, const SpectralData& s, bool with_omega2,
               std::optional<std::pair<cplx, cplx>> near = std::nullopt) {
    cplx m = double(sheet) * (near ? mu_plus_near(lambda, near->first, near->second, s.branch)
                                   : mu_plus(lambda, s.branch));
    Vec4 v;
    v << differential_numerator(Differential::Omega1, lambda, s),
        with_omega2 ? differential_numerator(Differential::Omega2, lambda, s) : cplx(0.0),
        differential_numerator(Differential::Omega3, lambda, s), cplx(s.omega_norm);
    return v / m;
}

// Straight segment a -> b; square-root endpoint singularities at branch points
// are removed by a polynomial or cosine change of variable.
Vec4 segment_integral(cplx a, cplx b, int sheet, const SpectralData& s, bool with_omega2, double& err) {
    bool sa = is_branch_point(a, s.branch), sb = is_branch_point(b, s.branch);
    cplx d = b - a;
    // t and 1 - t are both formed without cancellation; the point is measured
    // from the nearer endpoint so the distance to a branch point stays exact.
    auto f = [&](double u) -> Vec4 {
        double t, w, dt;
        if (sa && sb) {
            double sh = std::sin(0.5 * kPi * u), ch = std::cos(0.5 * kPi * u);
            t = sh * sh;
            w = ch * ch;
            dt = kPi * sh * ch;
        } else if (sa) {
            t = u * u;
            w = (1.0 - u) * (1.0 + u);
            dt = 2.0 * u;
        } else if (sb) {
            w = (1.0 - u) * (1.0 - u);
            t = u * (2.0 - u);
            dt = 2.0 * (1.0 - u);
        } else {
            t = u;
            w = 1.0 - u;
            dt = 1.0;
        }
        cplx z = t <= 0.5 ? a + t * d : b - w * d;
        std::optional<std::pair<cplx, cplx>> near;
        if (sa && t <= 0.5) near = std::pair{a, t * d};
        if (sb && t > 0.5) near = std::pair{b, -w * d};
        return integrand(z, sheet, s, with_omega2, near) * (d * dt);
    };
    auto res = integrate_gk<Vec4>(f, 0.0, 1.0);
    err += res.error;
    return res.value;
}

double scale_of(const BranchData& b) {
    return std::max({std::abs(b.lambda1.real() - b.lambda2.real()), b.lambda1.imag(), b.lambda2.imag()});
}

double infinity_anchor(const BranchData& b) { return std::max(b.lambda1.real(), b.lambda2.real()) + 1.0; }

// Tails over [x0, inf) in z = 1/l, integrands regularised as in the asymptotics
// of Omega1 ~ l, Omega3 ~ log l; all cancellations are carried out analytically.
Vec4 tail_integrals(double x0, const SpectralData& s, double& err) {
    double x1 = s.branch.lambda1.real(), x2 = s.branch.lambda2.real();
    double b1 = s.branch.lambda1.imag(), b2 = s.branch.lambda2.imag();
    auto f = [&](double z) -> Vec4 {
        double o1 = 1.0 - x1 * z, o2 = 1.0 - x2 * z;
        double be1 = b1 * z / o1, be2 = b2 * z / o2;
        double r1 = std::sqrt(1.0 + be1 * be1), r2 = std::sqrt(1.0 + be2 * be2);
        double dd1 = (b1 / o1) * (b1 / o1) / (1.0 + r1);  // (r1 - 1)/z^2
        double dd2 = (b2 / o2) * (b2 / o2) / (1.0 + r2);
        double del2 = be2 * be2 / (1.0 + r2);
        double P = o1 * o2;
        double nu = P * r1 * r2;
        double corr = dd1 + dd2 + dd1 * del2;
        Vec4 v;
        v << (-(s.c1 + x1 * x2) - P * corr) / nu,
            -s.mu0 * (z * z - 0.5 * s.d * z - s.c2) / nu,
            ((x1 + x2 - s.c3) - x1 * x2 * z - z * P * corr) / nu, cplx(s.omega_norm / nu);
        return v;
    };
    auto res = integrate_gk<Vec4>(f, 0.0, 1.0 / x0);
    err += res.error;
    return res.value;
}

Vec4 path_integral(const PathSpec& path, const SpectralData& s, bool with_omega2, double& err) {
    Vec4 total = Vec4::Zero();
    for (size_t k = 0; k + 1 < path.waypoints.size(); ++k)
        total += segment_integral(path.waypoints[k], path.waypoints[k + 1], path.sheet, s, with_omega2, err);
    return total;
}

PathSpec normalise(PathSpec path, const SpectralData& s) {
    cplx base = s.base_point.lambda;
    if (path.waypoints.empty() || std::abs(path.waypoints.front() - base) > 1e-12)
        path.waypoints.insert(path.waypoints.begin(), base);
    if (path.sheet != 1 && path.sheet != -1) throw Error(ErrorKind::InvalidInput, "sheet must be +1 or -1");
    return path;
}

void require_real(double im, const char* what) {
    if (std::abs(im) > 1e-6) throw Error(ErrorKind::RealityViolation, std::string(what) + " imaginary part " + std::to_string(im));
}

}  // namespace

void BranchData::validate() const {
    for (cplx l : {lambda1, lambda2}) {
        if (!std::isfinite(l.real()) || !std::isfinite(l.imag()))
            throw Error(ErrorKind::InvalidBranchData, "non-finite branch point");
        if (!(l.imag() > 0.0)) throw Error(ErrorKind::InvalidBranchData, "branch points must satisfy Im lambda_j > 0");
        if (std::abs(l) < 1e-14) throw Error(ErrorKind::InvalidBranchData, "lambda_j = 0");
    }
    if (std::abs(lambda1 - lambda2) < 1e-14) throw Error(ErrorKind::InvalidBranchData, "lambda_1 = lambda_2");
    if (std::abs(lambda1 - std::conj(lambda2)) < 1e-14 || std::abs(lambda2 - std::conj(lambda1)) < 1e-14)
        throw Error(ErrorKind::InvalidBranchData, "lambda_j = conj(lambda_k)");
}

double SpectralData::sqrt_beta() const { return std::exp(0.5 * log_beta); }

cplx mu_plus(cplx lambda, const BranchData& b) {
    return sheet_factor(lambda, b.lambda1) * sheet_factor(lambda, b.lambda2);
}

cplx mu(const CurvePoint& P, const BranchData& b) {
    if (P.at_infinity) throw Error(ErrorKind::DomainError, "mu is infinite at P_inf");
    if (is_branch_point(P.lambda, b)) throw Error(ErrorKind::AtBranchPoint, "lambda at a branch point");
    return double(P.sheet) * mu_plus(P.lambda, b);
}

CurvePoint p0_point(const SpectralData& data, int sign) {
    double m0 = mu_plus(0.0, data.branch).real();
    return {0.0, (m0 > 0 ? 1 : -1) * (sign >= 0 ? 1 : -1), false};
}

cplx differential_numerator(Differential kind, cplx l, const SpectralData& s) {
    switch (kind) {
    case Differential::Omega1: return l * l - 0.5 * s.c * l - s.c1;
    case Differential::Omega2: return -s.mu0 * (1.0 / (l * l) - 0.5 * s.d / l - s.c2);
    case Differential::Omega3: return l - s.c3;
    case Differential::Holomorphic: return s.omega_norm;
    }
    return 0.0;
}

PathSpec default_path(const CurvePoint& target, const SpectralData& s) {
    const BranchData& b = s.branch;
    double x1 = b.lambda1.real(), x2 = b.lambda2.real();
    double lo = std::min(x1, x2), hi = std::max(x1, x2);
    double sc = scale_of(b);
    cplx t = target.at_infinity ? cplx(infinity_anchor(b), 0.0) : target.lambda;
    double ylow = -1.5 * std::max(b.lambda1.imag(), b.lambda2.imag());
    double xt = t.real();

    // Vertical leg abscissa: inside the same gap between cut abscissae as the
    // target, clear of the cuts and of the origin.
    double gl, gr;
    if (xt < lo) {
        gl = -INFINITY;
        gr = lo;
    } else if (xt < hi) {
        gl = lo;
        gr = hi;
    } else {
        gl = hi;
        gr = INFINITY;
    }
    double xm;
    if (gl < 0.0 && gr > 0.0) {
        double right = std::isfinite(gr) ? gr : sc;
        double left = std::isfinite(gl) ? gl : -sc;
        xm = xt >= 0.0 ? 0.5 * right : 0.5 * left;
    } else if (!std::isfinite(gl)) {
        xm = std::min(xt, gr - 0.5 * sc);
    } else if (!std::isfinite(gr)) {
        xm = std::max(xt, gl + 0.5 * sc);
    } else {
        xm = 0.5 * (gl + gr);
    }
    std::vector<cplx> pts = {s.base_point.lambda, cplx(b.lambda2.real(), ylow), cplx(xm, ylow), cplx(xm, t.imag()), t};
    PathSpec out;
    out.sheet = target.sheet;
    for (cplx z : pts)
        if (out.waypoints.empty() || std::abs(z - out.waypoints.back()) > 1e-15) out.waypoints.push_back(z);
    return out;
}

void validate_path(const PathSpec& path, const SpectralData& s, bool avoid_origin) {
    const double eps = s.eps_cut;
    for (size_t k = 0; k + 1 < path.waypoints.size(); ++k) {
        cplx a = path.waypoints[k], b = path.waypoints[k + 1];
        double len = std::abs(b - a);
        if (len == 0.0) continue;
        for (cplx lj : branch_array(s.branch)) {
            cplx top = lj, bot = std::conj(lj);
            auto touches = [&](cplx z) { return std::abs(z - top) < 1e-12 || std::abs(z - bot) < 1e-12; };
            // A segment may start or end on this cut's branch point; only the part
            // outside a small ball around that endpoint is tested against the margin.
            double skip = std::min(0.5 * len, 10.0 * eps);
            cplx aa = a, bb = b;
            if (touches(a)) aa = a + (b - a) * (skip / len);
            if (touches(b)) bb = b - (b - a) * (skip / len);
            if (segment_distance(aa, bb, bot, top) < eps)
                throw Error(ErrorKind::PathThroughCut, "path segment violates the cut margin");
        }
        if (avoid_origin && segment_point_distance(a, b, 0.0) < eps)
            throw Error(ErrorKind::PathThroughCut, "path passes through the pole of dOmega2 at the origin");
    }
}

SpectralData genus1_spectral(const BranchData& branch, Divisor divisor) {
    branch.validate();
    const cplx l1 = branch.lambda1, l2 = branch.lambda2;
    if (std::abs(l1.real() - l2.real()) < 1e-12)
        throw Error(ErrorKind::InvalidBranchData, "vertical cuts share an abscissa");
    if (std::abs(l1.real()) < 1e-12 || std::abs(l2.real()) < 1e-12)
        throw Error(ErrorKind::InvalidBranchData, "a vertical cut passes through lambda = 0");
    if (divisor.epsilon != 0 && divisor.epsilon != 1)
        throw Error(ErrorKind::InvalidInput, "divisor epsilon must be 0 or 1");

    SpectralData s;
    s.branch = branch;
    s.divisor = divisor;
    s.h = (l1 - l2) / (l1 - std::conj(l2));
    double pp = std::abs(s.h);
    if (!(pp > 1e-10 && pp < 1.0 - 1e-10)) throw Error(ErrorKind::ModulusDegenerate, "p' outside (1e-10, 1-1e-10)");
    s.modulus = EllipticModulus::from_p_prime(pp);
    const double p = s.modulus.p;
    s.K = elliptic_K(p);
    s.K_prime = elliptic_K(pp);
    s.E_complete = elliptic_E(p);
    s.tau = -2.0 * kPi * s.K_prime / s.K;

    const double a12 = std::abs(l1 - std::conj(l2));
    s.mu0 = std::abs(l1) * std::abs(l2);
    s.c = 2.0 * (l1.real() + l2.real());
    s.d = 2.0 * ((1.0 / l1).real() + (1.0 / l2).real());
    const double ek = s.E_complete / s.K;
    s.c1 = 0.5 * (a12 * a12 * ek - std::norm(l1) - std::norm(l2));
    s.c2 = 0.5 * (std::norm(1.0 / l1 - 1.0 / std::conj(l2)) * ek - std::norm(1.0 / l1) - std::norm(1.0 / l2));
    // Conjugate base and slope: the a-normalised constant (real).
    const cplx beta2 = (l1 - std::conj(l1)) / (l1 - std::conj(l2));
    s.c3 = std::conj(l2) + (std::conj(l1) - std::conj(l2)) * elliptic_Pi(beta2, p) / s.K;

    s.U = kPi * a12 / s.K;
    s.V = -kPi * a12 / (s.mu0 * s.K);
    s.omega_norm = kPi * a12 / (2.0 * s.K);
    s.K_minus = 0.5 * s.tau;
    s.D = double(divisor.epsilon) * 0.5 * s.tau + kI * divisor.y;
    s.base_point = {std::conj(l2), 1, false};
    s.eps_cut = 1e-3 * 2.0 * std::min(l1.imag(), l2.imag());

    // Asymptotic constants from exact tails beyond x0 on sheet +1.
    const double x0 = infinity_anchor(branch);
    double err = 0.0;
    PathSpec path = default_path({cplx(x0, 0.0), 1, false}, s);
    validate_path(path, s, true);
    Vec4 at_x0 = path_integral(path, s, true, err);
    Vec4 tail = tail_integrals(x0, s, err);

    cplx E = -2.0 * (at_x0[0] - x0 + tail[0]);
    cplx H = 2.0 * (at_x0[1] + tail[1]);
    cplx C3 = at_x0[2] - std::log(x0) + tail[2];
    cplx logb = kI * kPi - 2.0 * C3;
    require_real(E.imag(), "E");
    require_real(H.imag(), "H");
    double im_logb = std::remainder(logb.imag(), 2.0 * kPi);
    require_real(im_logb, "log beta");
    s.E_const = E.real();
    s.H_const = H.real();
    s.log_beta = logb.real();
    s.abel_inf = at_x0[3] + tail[3];
    s.r = 2.0 * s.abel_inf;

    // F: Omega2 ~ 1/l - F/2 near P0+. Anchor a on the real axis in the gap of 0.
    {
        CurvePoint p0 = p0_point(s, +1);
        double gap = std::min(std::abs(l1.real()), std::abs(l2.real()));
        double lo = std::min(l1.real(), l2.real()), hi = std::max(l1.real(), l2.real());
        double a = (lo < 0.0 && hi > 0.0) ? 0.5 * std::min(hi, -lo) : (hi < 0.0 ? 0.5 * gap : -0.5 * gap);
        CurvePoint anchor{cplx(a, 0.0), p0.sheet, false};
        PathSpec pa = default_path(anchor, s);
        validate_path(pa, s, true);
        double e2 = 0.0;
        cplx om2 = path_integral(pa, s, true, e2)[1];
        auto g = [&](double x) -> cplx {
            cplx m = double(p0.sheet) * mu_plus(x, branch);
            return differential_numerator(Differential::Omega2, x, s) / m + 1.0 / (x * x);
        };
        // g is analytic at 0 but cancels like 1e-16/x^2 there; a loose tolerance
        // keeps the rule away from the origin.
        QuadOptions loose{1e-9, 1e-9, 64};
        cplx rest = -integrate_gk<cplx>(g, 0.0, a, loose).value;
        s.F_const = (-2.0 * (om2 - 1.0 / a + rest)).real();
    }
    return s;
}

PointIntegrals point_integrals(const CurvePoint& target, const SpectralData& s, const std::optional<PathSpec>& path) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    PointIntegrals out;
    if (!target.at_infinity && is_branch_point(target.lambda, s.branch) &&
        std::abs(target.lambda - s.base_point.lambda) > 1e-12)
        throw Error(ErrorKind::AtBranchPoint, "target is a branch point");
    if (!target.at_infinity && std::abs(target.lambda - s.base_point.lambda) <= 1e-12 && !path) {
        out.omega1 = out.omega2 = out.omega3 = out.abel = 0.0;
        return out;
    }
    PathSpec ps = normalise(path ? *path : default_path(target, s), s);
    if (path) ps.sheet = path->sheet;
    bool at_origin = !target.at_infinity && std::abs(target.lambda) < 1e-12;
    if (!target.at_infinity && std::abs(ps.waypoints.back() - target.lambda) > 1e-12)
        throw Error(ErrorKind::InvalidInput, "path does not end at the target");
    // The path check near the origin only makes sense when Omega2 is wanted.
    {
        PathSpec check = ps;
        if (at_origin) check.waypoints.pop_back();
        validate_path(check, s, !at_origin);
        if (at_origin) validate_path(ps, s, false);
    }
    double err = 0.0;
    Vec4 v = path_integral(ps, s, !at_origin, err);
    if (target.at_infinity) {
        double x0 = infinity_anchor(s.branch);
        if (std::abs(ps.waypoints.back() - cplx(x0, 0.0)) > 1e-12)
            throw Error(ErrorKind::InvalidInput, "paths to infinity must end at the real anchor");
        Vec4 tail = tail_integrals(x0, s, err);
        double sg = double(ps.sheet);
        out.omega1 = nan;
        out.omega3 = nan;
        // The tail integrands above are sheet +1 quantities.
        out.omega2 = v[1] + sg * tail[1];
        out.abel = v[3] + sg * tail[3];
    } else {
        out.omega1 = v[0];
        out.omega2 = at_origin ? cplx(nan, nan) : v[1];
        out.omega3 = v[2];
        out.abel = v[3];
    }
    out.error = err;
    return out;
}

PointIntegrals extend_integrals(const PointIntegrals& at_from, cplx from, cplx to, int sheet, const SpectralData& s) {
    PathSpec seg{{from, to}, sheet};
    try {
        validate_path(seg, s, true);
    } catch (const Error&) {
        throw Error(ErrorKind::SheetCrossing, "segment meets a branch cut or the origin");
    }
    double err = 0.0;
    Vec4 v = segment_integral(from, to, sheet, s, true, err);
    PointIntegrals out = at_from;
    out.omega1 += v[0];
    out.omega2 += v[1];
    out.omega3 += v[2];
    out.abel += v[3];
    out.error += err;
    return out;
}

IntegralValue abelian_integral(Differential kind, const CurvePoint& target, const SpectralData& s,
                               const std::optional<PathSpec>& path) {
    PointIntegrals pi = point_integrals(target, s, path);
    switch (kind) {
    case Differential::Omega1: return {pi.omega1, pi.error};
    case Differential::Omega2: return {pi.omega2, pi.error};
    case Differential::Omega3: return {pi.omega3, pi.error};
    case Differential::Holomorphic: return {pi.abel, pi.error};
    }
    return {0.0, 0.0};
}

AbelValue abel_map(const CurvePoint& target, const SpectralData& s, const std::optional<PathSpec>& path) {
    cplx a = point_integrals(target, s, path).abel + s.abel_inf;
    return {a, lattice_reduce_scalar(a, s)};
}

cplx a_period(Differential kind, const SpectralData& s) {
    const cplx l1 = s.branch.lambda1, l2 = s.branch.lambda2;
    double x1 = l1.real();
    double ax = 0.5 * std::min(std::abs(x1 - l2.real()), std::abs(x1));
    double ay = 1.3 * l1.imag() + 0.25 * ax;
    auto f = [&](double th) -> cplx {
        cplx z(x1 + ax * std::cos(th), ay * std::sin(th));
        cplx dz(-ax * std::sin(th), ay * std::cos(th));
        return differential_numerator(kind, z, s) / mu_plus(z, s.branch) * dz;
    };
    return integrate_gk<cplx>(f, 0.0, 2.0 * kPi).value;
}

cplx b_period(Differential kind, const SpectralData& s) {
    double err = 0.0;
    Vec4 v = segment_integral(std::conj(s.branch.lambda2), std::conj(s.branch.lambda1), 1, s,
                              kind == Differential::Omega2, err);
    int idx = kind == Differential::Omega1 ? 0 : kind == Differential::Omega2 ? 1 : kind == Differential::Omega3 ? 2 : 3;
    return 2.0 * v[idx];
}

cplx residue_at_infinity(Differential kind, int sheet, const SpectralData& s) {
    double R = 4.0 * std::max(std::abs(s.branch.lambda1), std::abs(s.branch.lambda2)) + 4.0;
    // Clockwise in l is counterclockwise in z = 1/l.
    auto f = [&](double th) -> cplx {
        cplx z = R * std::exp(-kI * th);
        cplx dz = -kI * z;
        return differential_numerator(kind, z, s) / (double(sheet) * mu_plus(z, s.branch)) * dz;
    };
    return integrate_gk<cplx>(f, 0.0, 2.0 * kPi).value / (2.0 * kPi * kI);
}

cplx lattice_reduce_scalar(cplx z, const SpectralData& s) {
    z -= s.tau * std::round(z.real() / s.tau);
    z -= 2.0 * kPi * kI * std::round(z.imag() / (2.0 * kPi));
    return z;
}

double lattice_distance(cplx z, const SpectralData& s) { return std::abs(lattice_reduce_scalar(z, s)); }

cplx r_closed_form_printed(const SpectralData& s) {
    cplx phi = std::asin(std::sqrt(s.h / std::abs(s.h)));
    return 2.0 * kPi * incomplete_F(phi, s.modulus.p_prime) / s.K;
}

cplx r_closed_form_amplitude(const SpectralData& s) {
    double p = s.modulus.p, pp = s.modulus.p_prime;
    cplx phi = std::asin(std::sqrt(1.0 - pp * pp / s.h) / p);
    return 2.0 * kPi * kI * incomplete_F(phi, p) / s.K;
}

cplx c3_closed_form_printed(const SpectralData& s) {
    const cplx l1 = s.branch.lambda1, l2 = s.branch.lambda2;
    const cplx beta2 = (l1 - std::conj(l1)) / (l1 - std::conj(l2));
    return l2 + (l1 - l2) * elliptic_Pi(beta2, s.modulus.p) / s.K;
}

double E_richardson(const SpectralData& s, double R1, double R2) {
    auto e_at = [&](double R) {
        cplx om = point_integrals({cplx(R, 0.0), 1, false}, s).omega1;
        return (-2.0 * (om - R)).real();
    };
    double e1 = e_at(R1), e2 = e_at(R2);
    return (R2 * e2 - R1 * e1) / (R2 - R1);
}

}  // namespace plr
