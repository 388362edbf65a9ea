#pragma once

// Globally adaptive 7/15-point Gauss-Kronrod on a real interval, for scalar
// complex or fixed-size complex-vector integrands.

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <queue>
#include <string>
#include <vector>

#include "plr/error.hpp"

namespace plr {

struct QuadOptions {
    double abs_tol = 1e-14;
    double rel_tol = 1e-13;
    int max_intervals = 4000;
};

template <class V>
struct QuadResult {
    V value;
    double error = 0.0;
    int evaluations = 0;
};

namespace detail {

inline double qnorm(const std::complex<double>& z) { return std::abs(z); }
template <class Derived>
double qnorm(const Eigen::MatrixBase<Derived>& v) {
    return v.cwiseAbs().maxCoeff();
}

inline constexpr std::array<double, 8> kGkNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodW = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussW = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
struct Piece {
    double a, b;
    V value;
    double error;
    bool operator<(const Piece& o) const { return error < o.error; }
};

template <class V, class F>
Piece<V> gk15(F& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    V fc = f(c);
    V kron = kKronrodW[7] * fc;
    V gauss = kGaussW[3] * fc;
    for (int j = 0; j < 7; ++j) {
        double dx = h * kGkNodes[j];
        V sum = f(c - dx) + f(c + dx);
        kron += kKronrodW[j] * sum;
        if (j % 2 == 1) gauss += kGaussW[j / 2] * sum;
    }
    kron *= h;
    gauss *= h;
    V diff = kron - gauss;
    return {a, b, kron, qnorm(diff)};
}

}  // namespace detail

template <class V, class F>
QuadResult<V> integrate_gk(F&& f, double a, double b, const QuadOptions& opt = {}) {
    using detail::Piece;
    V zero = f(0.5 * (a + b)) * 0.0;
    if (a == b) return {zero, 0.0, 1};
    std::priority_queue<Piece<V>> heap;
    Piece<V> first = detail::gk15<V>(f, a, b);
    heap.push(first);
    V total = first.value;
    double err = first.error;
    int evals = 15;
    while (err > std::max(opt.abs_tol, opt.rel_tol * detail::qnorm(total))) {
        if (int(heap.size()) >= opt.max_intervals)
            throw Error(ErrorKind::QuadratureFailure, "interval budget exhausted, error estimate " + std::to_string(err));
        Piece<V> worst = heap.top();
        double mid = 0.5 * (worst.a + worst.b);
        // Roundoff floor: the worst piece cannot be split further.
        if (mid <= worst.a || mid >= worst.b) break;
        heap.pop();
        Piece<V> l = detail::gk15<V>(f, worst.a, mid), r = detail::gk15<V>(f, mid, worst.b);
        evals += 30;
        total += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
    }
    V sum = zero;
    double esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().error;
        heap.pop();
    }
    if (!std::isfinite(detail::qnorm(sum))) throw Error(ErrorKind::QuadratureFailure, "non-finite integral");
    return {sum, esum, evals};
}

}  // namespace plr
