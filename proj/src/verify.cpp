#include "plr/verify.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <functional>

#include "plr/error.hpp"

namespace plr {

namespace {

using State = std::array<double, 4>;

State pack(const Psi& v) { return {v.psi1.real(), v.psi1.imag(), v.psi2.real(), v.psi2.imag()}; }
Eigen::RowVector2cd unpack(const State& x) { return {cplx(x[0], x[1]), cplx(x[2], x[3])}; }

ResidualReport start(std::string name, const GridSpec& g, double tol) {
    ResidualReport r;
    r.name = std::move(name);
    r.grid = g;
    r.tolerance = tol;
    return r;
}

void record(ResidualReport& r, double value, double s, double t) {
    if (!(value <= r.max_residual)) {
        r.max_residual = value;
        r.argmax_s = s;
        r.argmax_t = t;
    }
}

void close(ResidualReport& r) {
    size_t total = size_t(std::max(1, r.grid.ns)) * size_t(std::max(1, r.grid.nt));
    if (r.skipped.size() * 20 > total)
        throw Error(ErrorKind::ThetaDivisorHit, r.name + ": theta-divisor skips exceed 5% of the grid");
    r.passed = std::isfinite(r.max_residual) && r.max_residual < r.tolerance;
}

// Visit grid points; divisor hits are skipped and listed.
void for_grid(ResidualReport& r, const std::function<void(double, double)>& fn) {
    for (int j = 0; j < r.grid.nt; ++j)
        for (int i = 0; i < r.grid.ns; ++i) {
            double s = r.grid.s_at(i), t = r.grid.t_at(j);
            try {
                fn(s, t);
            } catch (const ThetaDivisorError&) {
                r.skipped.push_back({s, t});
            }
        }
}

}  // namespace

ResidualReport lax_propagation_residual(const FieldContext& ctx, Direction dir, double span, double tol, double s0,
                                        double t0) {
    GridSpec g;
    g.s0 = s0;
    g.t0 = t0;
    g.s1 = dir == Direction::S ? s0 + span : s0;
    g.t1 = dir == Direction::T ? t0 + span : t0;
    g.ns = dir == Direction::S ? 11 : 1;
    g.nt = dir == Direction::T ? 11 : 1;
    ResidualReport r = start(dir == Direction::S ? "lax_propagation_s" : "lax_propagation_t", g, tol);
    const double L0 = ctx.Lambda0();
    const PointData& P = ctx.p0();
    auto at = [&](double x) { return dir == Direction::S ? std::array<double, 2>{x, t0} : std::array<double, 2>{s0, x}; };
    auto rhs = [&](const State& x, State& dx, double v) {
        auto [s, t] = at(v);
        QValue q = q_potential(s, t, ctx);
        Mat2 A = dir == Direction::S ? lax_L(q, L0) : lax_M(q, L0);
        Eigen::RowVector2cd y = unpack(x) * A;
        dx = {y[0].real(), y[0].imag(), y[1].real(), y[1].imag()};
    };
    State x = pack(psi(P, s0, t0, ctx));
    double origin = dir == Direction::S ? s0 : t0;
    std::vector<double> times;
    for (int k = 0; k <= 10; ++k) times.push_back(origin + span * k / 10.0);
    if (span == 0.0) {
        r.max_residual = 0.0;
        close(r);
        return r;
    }
    using namespace boost::numeric::odeint;
    auto stepper = make_dense_output(1e-13, 1e-13, runge_kutta_dopri5<State>());
    integrate_times(stepper, rhs, x, times.begin(), times.end(), span / 50.0, [&](const State& y, double v) {
        auto [s, t] = at(v);
        Psi ref = psi(P, s, t, ctx);
        Eigen::RowVector2cd e = unpack(y), w(ref.psi1, ref.psi2);
        record(r, (e - w).norm() / w.norm(), s, t);
    });
    close(r);
    return r;
}

ResidualReport zero_curvature_residual(const FieldContext& ctx, const GridSpec& grid, double tol, double h) {
    ResidualReport r = start("zero_curvature", grid, tol);
    const double L0 = ctx.Lambda0();
    for_grid(r, [&](double s, double t) {
        QValue q = q_potential(s, t, ctx);
        Mat2 L = lax_L(q, L0), M = lax_M(q, L0);
        Mat2 Lt = (lax_L(q_potential(s, t + h, ctx), L0) - lax_L(q_potential(s, t - h, ctx), L0)) / (2 * h);
        Mat2 Ms = (lax_M(q_potential(s + h, t, ctx), L0) - lax_M(q_potential(s - h, t, ctx), L0)) / (2 * h);
        Mat2 res = Lt - Ms + (M * L - L * M);
        record(r, res.cwiseAbs().maxCoeff(), s, t);
    });
    close(r);
    return r;
}

ResidualReport plr_equation_residual(const FieldContext& ctx, const GridSpec& grid, double tol, double h) {
    ResidualReport r = start("plr_equation", grid, tol);
    for_grid(r, [&](double s, double t) {
        auto ratio = [&](double ss) {
            QValue q = q_potential(ss, t, ctx);
            return q.q_st / q.q;
        };
        cplx ds = (ratio(s + h) - ratio(s - h)) / (2 * h);
        // (|q|^2)_t from central differences of |q|^2.
        double nt = (std::norm(q_potential(s, t + h, ctx).q) - std::norm(q_potential(s, t - h, ctx).q)) / (2 * h);
        record(r, std::abs(ds + 0.5 * nt), s, t);
    });
    close(r);
    return r;
}

std::vector<ResidualReport> geometry_residuals(const FieldContext& ctx, const GridSpec& grid, GeometryTolerances tol) {
    ResidualReport arc = start("arclength", grid, tol.arclength);
    ResidualReport evo = start("evolution_law", grid, tol.evolution);
    ResidualReport fre = start("frenet", grid, tol.frenet);
    ResidualReport sym = start("sym_analytic_vs_fd", grid, tol.sym_agreement);
    const double h1 = 1e-4, h2 = 1e-3, L0 = ctx.Lambda0();
    auto G = [&](double s, double t) { return gamma_sym(s, t, ctx); };
    for (int j = 0; j < grid.nt; ++j)
        for (int i = 0; i < grid.ns; ++i) {
            double s = grid.s_at(i), t = grid.t_at(j);
            try {
                Vec3 gs = (G(s + h1, t) - G(s - h1, t)) / (2 * h1);
                Vec3 gt = (G(s, t + h1) - G(s, t - h1)) / (2 * h1);
                Vec3 gst = (G(s + h2, t + h2) - G(s + h2, t - h2) - G(s - h2, t + h2) + G(s - h2, t - h2)) / (4 * h2 * h2);
                record(arc, std::abs(gs.norm() - 1.0), s, t);
                record(evo, (gst - L0 * gs.cross(gt)).norm(), s, t);

                // Five-point stencils along s for the discrete Frenet data.
                const double e = h2;
                Vec3 m2 = G(s - 2 * e, t), m1 = G(s - e, t), c0 = G(s, t), p1 = G(s + e, t), p2 = G(s + 2 * e, t);
                Vec3 d1 = (m2 - 8 * m1 + 8 * p1 - p2) / (12 * e);
                Vec3 d2 = (-m2 + 16 * m1 - 30 * c0 + 16 * p1 - p2) / (12 * e * e);
                Vec3 d3 = (-m2 + 2 * m1 - 2 * p1 + p2) / (2 * e * e * e);
                Vec3 b = d1.cross(d2);
                double kd = b.norm() / std::pow(d1.norm(), 3);
                double td = b.dot(d3) / b.squaredNorm();
                Frenet fq = frenet_from_q(s, t, ctx);
                record(fre, std::max(std::abs(kd - fq.kappa), std::abs(td - fq.torsion)), s, t);

                Vec3 ga = gamma_sym(s, t, ctx, SymMethod::Analytic);
                Vec3 gf = gamma_sym(s, t, ctx, SymMethod::FiniteDifference);
                record(sym, (ga - gf).norm(), s, t);
            } catch (const ThetaDivisorError&) {
                for (auto* r : {&arc, &evo, &fre, &sym}) r->skipped.push_back({s, t});
            }
        }
    std::vector<ResidualReport> out{arc, evo, fre, sym};
    for (auto& r : out) close(r);
    return out;
}

ResidualReport closure_residual(const FieldContext& ctx, const ClosureReport& rep, int samples,
                                const std::vector<double>& other, double tol) {
    if (samples < 1) throw Error(ErrorKind::InvalidInput, "closure_residual needs samples >= 1");
    GridSpec g;
    const double P = rep.period;
    bool s_kind = rep.kind == ClosureKind::S;
    // s-closure samples one period in s; t-periodicity samples s in [0, 1].
    g.s0 = 0.0;
    g.s1 = s_kind ? P : 1.0;
    g.ns = samples;
    g.t0 = other.empty() ? 0.0 : other.front();
    g.t1 = other.empty() ? 0.0 : other.back();
    g.nt = int(std::max<size_t>(1, other.size()));
    ResidualReport r = start(s_kind ? "closure_s" : "periodicity_t", g, tol);
    for (double o : other)
        for (int i = 0; i < samples; ++i) {
            double s = samples > 1 ? g.s0 + (g.s1 - g.s0) * i / samples : g.s0;
            double t = o;
            try {
                Vec3 a = gamma_sym(s, t, ctx);
                Vec3 b = s_kind ? gamma_sym(s + P, t, ctx) : gamma_sym(s, t + P, ctx);
                record(r, (b - a).norm(), s, t);
            } catch (const ThetaDivisorError&) {
                r.skipped.push_back({s, t});
            }
        }
    close(r);
    return r;
}

}  // namespace plr
