#pragma once

// Residual oracles. Each compares a theta-formula quantity against an
// independent route: ODE propagation, finite differences, discrete geometry.

#include <string>
#include <vector>

#include "plr/bafield.hpp"
#include "plr/closure.hpp"

namespace plr {

struct ResidualReport {
    std::string name;
    GridSpec grid;
    double max_residual = 0;
    double tolerance = 0;
    bool passed = false;
    double argmax_s = 0, argmax_t = 0;
    std::vector<std::array<double, 2>> skipped;
};

enum class Direction { S, T };

ResidualReport lax_propagation_residual(const FieldContext& ctx, Direction dir, double span, double tol = 1e-6,
                                        double s0 = 0.0, double t0 = 0.0);
// Row-vector compatibility L_t - M_s + [M, L] = 0, derivatives by central differences.
ResidualReport zero_curvature_residual(const FieldContext& ctx, const GridSpec& grid, double tol = 1e-5,
                                       double step = 1e-4);
// d_s(q_st/q) + 1/2 (|q|^2)_t.
ResidualReport plr_equation_residual(const FieldContext& ctx, const GridSpec& grid, double tol = 1e-5,
                                     double step = 1e-4);

struct GeometryTolerances {
    double arclength = 1e-6;
    double evolution = 1e-5;
    double frenet = 1e-3;
    double sym_agreement = 1e-6;
};
// arclength, evolution law gamma_st = Lambda0 gamma_s x gamma_t, Frenet, analytic-vs-FD Sym.
std::vector<ResidualReport> geometry_residuals(const FieldContext& ctx, const GridSpec& grid,
                                               GeometryTolerances tol = {});

ResidualReport closure_residual(const FieldContext& ctx, const ClosureReport& report, int samples,
                                const std::vector<double>& other = {0.0}, double tol = 1e-4);

}  // namespace plr
