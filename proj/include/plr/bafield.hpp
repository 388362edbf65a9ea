#pragma once

// Gauge-fixed Baker-Akhiezer function, PLR potential, SU(2) frame and the
// Sym reconstruction at a real reconstruction point Lambda0 > 0.

#include <Eigen/Core>
#include <array>
#include <optional>
#include <vector>

#include "plr/spectral.hpp"

namespace plr {

using Mat2 = Eigen::Matrix2cd;
using Vec3 = Eigen::Vector3d;

// Abelian integrals at a point and their lambda-derivatives.
struct PointData {
    CurvePoint P;
    cplx omega1, omega2, omega3;
    cplx abel_minus;  // A_-(P)
    cplx d_omega1, d_omega2, d_omega3, d_abel;
};

PointData point_data(const CurvePoint& P, const SpectralData& data, const std::optional<PathSpec>& path = std::nullopt);

struct FieldOptions {
    double divisor_threshold = 1e-12;
    double fd_rel_step = 1e-5;  // Sym stencil h = fd_rel_step * Lambda0
    std::optional<cplx> alpha;
};

class FieldContext {
public:
    FieldContext(const SpectralData& data, double Lambda0, FieldOptions opt = {});

    const SpectralData& data() const { return data_; }
    double Lambda0() const { return lambda0_; }
    const PointData& p0() const { return p0_; }
    // Data at Lambda0 -+ h, continued along the real axis from P0.
    const PointData& stencil(int side) const { return side < 0 ? minus_ : plus_; }
    double stencil_step() const { return h_; }
    const FieldOptions& options() const { return opt_; }
    cplx alpha() const { return alpha_; }

private:
    SpectralData data_;
    double lambda0_;
    FieldOptions opt_;
    PointData p0_, minus_, plus_;
    double h_;
    cplx alpha_;
};

struct Psi {
    cplx psi1, psi2;
};

Psi psi(const PointData& P, double s, double t, const FieldContext& ctx);
Psi psi(const CurvePoint& P, double s, double t, const FieldContext& ctx);

struct QValue {
    cplx q, q_s, q_t, q_st;
};
QValue q_potential(double s, double t, const FieldContext& ctx);

// Lax pair at spectral parameter lambda; psi_s = psi L, psi_t = psi M (row vector).
Mat2 lax_L(const QValue& q, cplx lambda);
Mat2 lax_M(const QValue& q, cplx lambda);

struct FrameValue {
    Mat2 Psi;
    cplx psi1, psi2;
    double rho;
};
FrameValue frame_from_psi(const Psi& v);
FrameValue frame(double s, double t, const PointData& P, const FieldContext& ctx);

// Analytic: closed gamma11/gamma21 displays (gamma21 conjugated, see notes).
// ChainRule: derivative of the frame through psi'. FiniteDifference: stencil in lambda.
enum class SymMethod { Analytic, ChainRule, FiniteDifference };

// Anti-Hermitian traceless 2x2 <-> R^3: (x,y,z) <-> 1/2 [[iz, -x-iy], [x-iy, -iz]].
Vec3 su2_to_r3(const Mat2& m);
Mat2 r3_to_su2(const Vec3& v);

Mat2 gamma_matrix(double s, double t, const FieldContext& ctx, SymMethod method = SymMethod::Analytic);
Vec3 gamma_sym(double s, double t, const FieldContext& ctx, SymMethod method = SymMethod::Analytic);
// The gamma21 display exactly as printed (no conjugation, ratio inverted); kept for comparison only.
cplx gamma21_printed(double s, double t, const FieldContext& ctx);

struct Frenet {
    double kappa, torsion;
};
// kappa = |q|; torsion = Lambda0 + Im(q_s/q), which is the printed 1 + d_s arg q at Lambda0 = 1.
Frenet frenet_from_q(double s, double t, const FieldContext& ctx);

struct GridSpec {
    double s0 = 0, s1 = 1;
    int ns = 2;
    double t0 = 0, t1 = 0;
    int nt = 1;
    double s_at(int i) const { return ns > 1 ? s0 + (s1 - s0) * i / (ns - 1) : s0; }
    double t_at(int j) const { return nt > 1 ? t0 + (t1 - t0) * j / (nt - 1) : t0; }
};

struct CurveSample {
    double s, t;
    Vec3 gamma;
    cplx q;
    double kappa, torsion;
};

struct CurveGrid {
    GridSpec grid;
    std::vector<CurveSample> samples;  // row-major in t, then s
    std::vector<std::array<double, 2>> skipped;
};

CurveGrid sample_curve(const FieldContext& ctx, const GridSpec& grid);

}  // namespace plr
