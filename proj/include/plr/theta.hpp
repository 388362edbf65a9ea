#pragma once

// Riemann theta function theta(u) = sum_n exp(1/2 n tau n^T + n u^T),
// periods 2 pi i e_k and the columns of tau.

#include <Eigen/Dense>
#include <complex>

namespace plr {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

class PeriodMatrix {
public:
    explicit PeriodMatrix(const CMat& tau);
    static PeriodMatrix scalar(cplx tau);

    int genus() const { return int(tau_.rows()); }
    const CMat& tau() const { return tau_; }
    // Cholesky factor R of -Re tau (upper, -Re tau = R^T R).
    const Eigen::MatrixXd& chol_upper() const { return r_; }
    const Eigen::MatrixXd& neg_re_inverse() const { return qinv_; }
    // Im tau_jk = pi off the diagonal and 0 on it.
    bool has_real_structure(double tol = 1e-8) const;

private:
    CMat tau_;
    Eigen::MatrixXd r_;
    Eigen::MatrixXd qinv_;
};

cplx theta(const CVec& u, const PeriodMatrix& tau);
cplx theta_shift_factor(const CVec& u, const PeriodMatrix& tau, int k);
cplx theta_dderiv(const CVec& u, const PeriodMatrix& tau, const CVec& direction, int order);

// Value, two directional derivatives and the mixed second derivative from one lattice pass.
struct ThetaJet {
    cplx value, d1, d2, d12;
};
ThetaJet theta_jet(const CVec& u, const PeriodMatrix& tau, const CVec& d1, const CVec& d2);

// Genus-one fast path; tau a negative real number in practice.
cplx theta1(cplx u, cplx tau);
ThetaJet theta1_jet(cplx u, cplx tau, cplx d1, cplx d2);

// Representative of u modulo 2 pi i Z^g + tau Z^g with coordinates in [-1/2, 1/2).
CVec lattice_reduce(const CVec& u, const PeriodMatrix& tau);

}  // namespace plr
