#pragma once

// Closure in s and periodicity in t at the reconstruction point: critical
// points of dOmega1 / dOmega2, phase quantisation, Jacobi-form cross-check.

#include <functional>
#include <vector>

#include "plr/spectral.hpp"

namespace plr {

enum class ClosureKind { S, T };

const char* to_string(ClosureKind k);

struct ClosureTolerances {
    double critical = 1e-9;
    double phase = 1e-6;
};

struct ClosureReport {
    ClosureKind kind = ClosureKind::S;
    double Lambda0 = 0;
    double period = 0;
    int n_or_m = 0;
    double quasimomentum = 0;
    double critical_residual = 0;
    double phase_distance = 0;
    cplx direct_phase;   // exp(i period Omega / 2)
    cplx jacobi_phase;   // exp(i period Omega_J / 2), Omega_J from the Jacobi form at unit index
    double jacobi_mismatch = 0;
    ClosureTolerances tol;
    bool passed = false;
};

// Positive real roots, ascending.
std::vector<double> critical_lambda(ClosureKind kind, const SpectralData& data);
double quantized_period(ClosureKind kind, int n, const SpectralData& data);

ClosureReport phase_check(ClosureKind kind, double Lambda0, double period, const SpectralData& data,
                          ClosureTolerances tol = {});

struct BranchFamily {
    std::function<BranchData(double)> param;
    double lo = 0, hi = 0;
    // Index into the ascending positive roots of critical_lambda; -1 selects the largest.
    int root_index = -1;
    Divisor divisor;
};

struct SearchResult {
    double theta_star = 0;
    BranchData branch;
    SpectralData data;
    ClosureReport report;
    int evaluations = 0;
};

SearchResult search_phase(ClosureKind kind, const BranchFamily& family, int n, double tol = 1e-9,
                          ClosureTolerances report_tol = {});

}  // namespace plr
