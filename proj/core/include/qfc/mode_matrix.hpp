#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qfc/point.hpp"

namespace qfc {

// Local 2x2 generator of the coupled probe/signal propagation at one slice:
//   d/dzeta (a_p, a_s)^T = M (a_p, a_s)^T,
//   M = [[lambda_p, kappa_p], [kappa_s, lambda_s]],
// per unit zeta, in units of Gamma.
struct CoupledModeMatrix {
  Eigen::Matrix2cd m;

  std::complex<double> lambda_p() const { return m(0, 0); }
  std::complex<double> kappa_p() const { return m(0, 1); }
  std::complex<double> kappa_s() const { return m(1, 0); }
  std::complex<double> lambda_s() const { return m(1, 1); }
};

// Evaluates the generator at a given local coupling Rabi frequency.  Two
// independent routes are provided:
//
//  * closed_form eliminates the four first-order coherences analytically
//    (adjugate of the 4x4 coefficient matrix over its determinant).  The
//    common denominator is the full determinant, which includes the product
//    of the four complex linewidths on top of the |Omega|^2 terms, and the
//    cross-coupling numerators carry -gamma'*gamma' constants from the
//    adjugate.
//  * linear_solve builds the same 4x4 system and solves it numerically; it
//    is the authoritative reference the closed form is tested against.
class ModeMatrixEvaluator {
 public:
  explicit ModeMatrixEvaluator(const OperatingPoint& pt);

  Eigen::Matrix2cd closed_form(std::complex<double> omega_c) const;
  Eigen::Matrix2cd linear_solve(std::complex<double> omega_c) const;

 private:
  void ground_state(std::complex<double> omega_c, double& p11, double& p33,
                    std::complex<double>& s13) const;

  double decay_31_;
  double g31_;
  double delta_c_;
  std::complex<double> gp21_, gp32_, gp41_, gp43_;  // gamma' shifted linewidths
  double omega_d_;
  double alpha_, alpha_s_, cross_;  // cross_ = sqrt(alpha * alpha_s)
};

CoupledModeMatrix coupled_mode_matrix(const OperatingPoint& pt,
                                      std::complex<double> omega_c_at_z);
CoupledModeMatrix coupled_mode_matrix_oracle(const OperatingPoint& pt,
                                             std::complex<double> omega_c_at_z);

}  // namespace qfc
