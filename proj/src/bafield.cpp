#include "plr/bafield.hpp"

#include <cmath>

#include "plr/error.hpp"

namespace plr {

namespace {

const cplx kI(0.0, 1.0);

PointData make_point_data(const CurvePoint& P, const PointIntegrals& pi, const SpectralData& s) {
    cplx m = mu(P, s.branch);
    PointData d;
    d.P = P;
    d.omega1 = pi.omega1;
    d.omega2 = pi.omega2;
    d.omega3 = pi.omega3;
    d.abel_minus = pi.abel + s.abel_inf;
    d.d_omega1 = differential_numerator(Differential::Omega1, P.lambda, s) / m;
    d.d_omega2 = differential_numerator(Differential::Omega2, P.lambda, s) / m;
    d.d_omega3 = differential_numerator(Differential::Omega3, P.lambda, s) / m;
    d.d_abel = s.omega_norm / m;
    return d;
}

cplx W(double s, double t, const SpectralData& d) { return -0.5 * kI * (s * d.U + t * d.V); }

cplx guarded_denominator(double s, double t, const FieldContext& ctx) {
    const SpectralData& d = ctx.data();
    cplx den = theta1(W(s, t, d) + d.D, d.tau);
    if (std::abs(den) <= ctx.options().divisor_threshold) throw ThetaDivisorError(s, t, std::abs(den));
    return den;
}

// psi and its lambda-derivative at P.
struct PsiJet {
    Psi v, dv;
};

PsiJet psi_jet(const PointData& P, double s, double t, const FieldContext& ctx) {
    const SpectralData& d = ctx.data();
    cplx den = guarded_denominator(s, t, ctx);
    cplx w = W(s, t, d);
    cplx u1 = P.abel_minus - w - d.D - d.r;
    cplx u2 = P.abel_minus - w - d.D;
    ThetaJet j1 = theta1_jet(u1, d.tau, P.d_abel, 0.0);
    ThetaJet j2 = theta1_jet(u2, d.tau, P.d_abel, 0.0);
    cplx e1 = std::exp(0.5 * kI * s * (P.omega1 + 0.5 * d.E_const) + 0.5 * kI * t * (P.omega2 - 0.5 * d.H_const) +
                       P.omega3);
    cplx e2 = std::exp(0.5 * kI * s * (P.omega1 - 0.5 * d.E_const) + 0.5 * kI * t * (P.omega2 + 0.5 * d.H_const));
    PsiJet out;
    out.v.psi1 = -kI * e1 * j1.value / den;
    out.v.psi2 = e2 * j2.value / den;
    cplx common = 0.5 * kI * (s * P.d_omega1 + t * P.d_omega2);
    out.dv.psi1 = out.v.psi1 * (common + P.d_omega3) + (-kI * e1 / den) * j1.d1;
    out.dv.psi2 = out.v.psi2 * common + (e2 / den) * j2.d1;
    return out;
}

Mat2 G_of(cplx a, cplx b) {
    Mat2 g;
    g << a, b, -std::conj(b), std::conj(a);
    return g;
}

}  // namespace

PointData point_data(const CurvePoint& P, const SpectralData& s, const std::optional<PathSpec>& path) {
    return make_point_data(P, point_integrals(P, s, path), s);
}

FieldContext::FieldContext(const SpectralData& data, double Lambda0, FieldOptions opt)
    : data_(data), lambda0_(Lambda0), opt_(opt) {
    if (data.divisor.epsilon != 0)
        throw Error(ErrorKind::InvalidInput, "divisor epsilon = 1 breaks the reality of L; only epsilon = 0 is admissible");
    if (!(Lambda0 > 0.0) || !std::isfinite(Lambda0)) throw Error(ErrorKind::InvalidInput, "Lambda0 must be real and positive");
    for (cplx l : {data.branch.lambda1, data.branch.lambda2})
        if (std::abs(Lambda0 - l.real()) < 1e-12)
            throw Error(ErrorKind::InvalidInput, "Lambda0 is a branch-point abscissa");
    CurvePoint P0{cplx(Lambda0, 0.0), 1, false};
    PointIntegrals at0 = point_integrals(P0, data);
    p0_ = make_point_data(P0, at0, data);
    h_ = opt.fd_rel_step * Lambda0;
    for (int side : {-1, 1}) {
        cplx to(Lambda0 + side * h_, 0.0);
        PointIntegrals pi = extend_integrals(at0, P0.lambda, to, 1, data);
        (side < 0 ? minus_ : plus_) = make_point_data({to, 1, false}, pi, data);
    }
    alpha_ = opt.alpha ? *opt.alpha
                       : theta1(data.D, data.tau) / (data.sqrt_beta() * theta1(data.D - data.r, data.tau));
}

Psi psi(const PointData& P, double s, double t, const FieldContext& ctx) { return psi_jet(P, s, t, ctx).v; }

Psi psi(const CurvePoint& P, double s, double t, const FieldContext& ctx) {
    return psi(point_data(P, ctx.data()), s, t, ctx);
}

QValue q_potential(double s, double t, const FieldContext& ctx) {
    const SpectralData& d = ctx.data();
    cplx w = W(s, t, d);
    cplx dU = -0.5 * kI * d.U, dV = -0.5 * kI * d.V;
    ThetaJet den = theta1_jet(w + d.D, d.tau, dU, dV);
    if (std::abs(den.value) <= ctx.options().divisor_threshold) throw ThetaDivisorError(s, t, std::abs(den.value));
    ThetaJet num = theta1_jet(w + d.D - d.r, d.tau, dU, dV);
    // Exponential factor exp(-iEs/2 + iHt/2); see the decisions note on the factor 2.
    cplx q = 2.0 * kI * d.sqrt_beta() * std::exp(-0.5 * kI * d.E_const * s + 0.5 * kI * d.H_const * t) * num.value /
             den.value;
    cplx ns = num.d1 / num.value, nt = num.d2 / num.value, ds = den.d1 / den.value, dt = den.d2 / den.value;
    cplx ls = -0.5 * kI * d.E_const + ns - ds;
    cplx lt = 0.5 * kI * d.H_const + nt - dt;
    cplx lst = (num.d12 / num.value - ns * nt) - (den.d12 / den.value - ds * dt);
    return {q, q * ls, q * lt, q * (ls * lt + lst)};
}

Mat2 lax_L(const QValue& q, cplx lambda) {
    Mat2 L;
    L << 0.5 * kI * lambda, 0.5 * q.q, -0.5 * std::conj(q.q), -0.5 * kI * lambda;
    return L;
}

Mat2 lax_M(const QValue& q, cplx lambda) {
    double a = (q.q_st / q.q).real();
    Mat2 M;
    M << -a, -q.q_t, -std::conj(q.q_t), a;
    return (0.5 * kI / lambda) * M;
}

FrameValue frame_from_psi(const Psi& v) {
    double rho = std::norm(v.psi1) + std::norm(v.psi2);
    return {G_of(v.psi1, v.psi2) / std::sqrt(rho), v.psi1, v.psi2, rho};
}

FrameValue frame(double s, double t, const PointData& P, const FieldContext& ctx) {
    return frame_from_psi(psi(P, s, t, ctx));
}

Vec3 su2_to_r3(const Mat2& m) { return {2.0 * m(1, 0).real(), -2.0 * m(1, 0).imag(), 2.0 * m(0, 0).imag()}; }

Mat2 r3_to_su2(const Vec3& v) {
    Mat2 m;
    m << cplx(0, v.z()), cplx(-v.x(), -v.y()), cplx(v.x(), -v.y()), cplx(0, -v.z());
    return 0.5 * m;
}

Mat2 gamma_matrix(double s, double t, const FieldContext& ctx, SymMethod method) {
    const PointData& P = ctx.p0();
    switch (method) {
    case SymMethod::ChainRule: {
        PsiJet j = psi_jet(P, s, t, ctx);
        FrameValue f = frame_from_psi(j.v);
        double drho = 2.0 * (std::conj(j.v.psi1) * j.dv.psi1 + std::conj(j.v.psi2) * j.dv.psi2).real();
        Mat2 g = G_of(j.v.psi1, j.v.psi2), dg = G_of(j.dv.psi1, j.dv.psi2);
        return dg * g.adjoint() / f.rho - (0.5 * drho / f.rho) * Mat2::Identity();
    }
    case SymMethod::FiniteDifference: {
        Mat2 pp = frame(s, t, ctx.stencil(1), ctx).Psi, pm = frame(s, t, ctx.stencil(-1), ctx).Psi;
        Mat2 p0 = frame(s, t, P, ctx).Psi;
        return (pp - pm) / (2.0 * ctx.stencil_step()) * p0.adjoint();
    }
    case SymMethod::Analytic: {
        const SpectralData& d = ctx.data();
        Psi v = psi(P, s, t, ctx);
        double rho = std::norm(v.psi1) + std::norm(v.psi2);
        cplx phi = W(s, t, d) + d.D;
        auto dlog = [&](cplx u) {
            ThetaJet j = theta1_jet(u, d.tau, P.d_abel, 0.0);
            return j.d1 / j.value;
        };
        cplx A = P.abel_minus;
        cplx g11 = 0.5 * kI * (P.d_omega1 * s + P.d_omega2 * t) +
                   (0.5 / rho) * (std::norm(v.psi1) * (dlog(A - phi - d.r) - dlog(A + phi - d.r)) +
                                  std::norm(v.psi2) * (dlog(A - phi) - dlog(A + phi)));
        cplx g21 = std::conj(v.psi1 * v.psi2 / rho * (dlog(A - phi - d.r) - dlog(A - phi) + P.d_omega3));
        Mat2 m;
        m << g11, -std::conj(g21), g21, -g11;
        return m;
    }
    }
    return Mat2::Zero();
}

cplx gamma21_printed(double s, double t, const FieldContext& ctx) {
    const SpectralData& d = ctx.data();
    const PointData& P = ctx.p0();
    Psi v = psi(P, s, t, ctx);
    double rho = std::norm(v.psi1) + std::norm(v.psi2);
    cplx phi = W(s, t, d) + d.D;
    auto dlog = [&](cplx u) {
        ThetaJet j = theta1_jet(u, d.tau, P.d_abel, 0.0);
        return j.d1 / j.value;
    };
    cplx A = P.abel_minus;
    return v.psi1 * v.psi2 / rho * (dlog(A - phi) - dlog(A - phi - d.r) + P.d_omega3);
}

Vec3 gamma_sym(double s, double t, const FieldContext& ctx, SymMethod method) {
    return su2_to_r3(gamma_matrix(s, t, ctx, method));
}

Frenet frenet_from_q(double s, double t, const FieldContext& ctx) {
    QValue q = q_potential(s, t, ctx);
    double kappa = std::abs(q.q);
    if (kappa < 1e-12) throw Error(ErrorKind::VanishingCurvature, "|q| below 1e-12");
    return {kappa, ctx.Lambda0() + (q.q_s / q.q).imag()};
}

CurveGrid sample_curve(const FieldContext& ctx, const GridSpec& grid) {
    if (grid.ns < 1 || grid.nt < 1) throw Error(ErrorKind::InvalidInput, "grid needs at least one point per axis");
    CurveGrid out;
    out.grid = grid;
    for (int j = 0; j < grid.nt; ++j)
        for (int i = 0; i < grid.ns; ++i) {
            double s = grid.s_at(i), t = grid.t_at(j);
            try {
                QValue q = q_potential(s, t, ctx);
                Frenet fr = frenet_from_q(s, t, ctx);
                out.samples.push_back({s, t, gamma_sym(s, t, ctx), q.q, fr.kappa, fr.torsion});
            } catch (const ThetaDivisorError&) {
                out.skipped.push_back({s, t});
            }
        }
    return out;
}

}  // namespace plr
