#include "qfc/mode_matrix.hpp"

#include <cmath>
#include <sstream>

#include "qfc/errors.hpp"

namespace qfc {

namespace {
using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};
}  // namespace

ModeMatrixEvaluator::ModeMatrixEvaluator(const OperatingPoint& pt) {
  decay_31_ = pt.scheme.decay_31();
  g31_ = pt.gamma.g31();
  delta_c_ = pt.delta_c;
  // shifted complex linewidths of the four driven coherences (zero response
  // frequency; the detuning pattern follows the level ladder)
  gp21_ = cd(pt.gamma.g21(), -2.0 * pt.delta_p);
  gp32_ = cd(pt.gamma.g32(), -2.0 * (pt.delta_p - pt.delta_c));
  gp41_ = cd(pt.gamma.g41(), -2.0 * pt.delta);
  gp43_ = cd(pt.gamma.g43(), -2.0 * (pt.delta - pt.delta_c));
  omega_d_ = pt.omega_d;
  const CouplingScales cs = pt.scales();
  alpha_ = cs.alpha;
  alpha_s_ = cs.alpha_s;
  cross_ = std::sqrt(cs.alpha * cs.alpha_s);
}

void ModeMatrixEvaluator::ground_state(cd omega_c, double& p11, double& p33, cd& s13) const {
  const double uc = std::norm(omega_c);
  const double elastic = decay_31_ * (g31_ * g31_ + 4.0 * delta_c_ * delta_c_);
  const double den = elastic + 2.0 * g31_ * uc;
  p11 = (elastic + g31_ * uc) / den;
  p33 = 1.0 - p11;
  s13 = kI * decay_31_ * cd(g31_, 2.0 * delta_c_) * omega_c / den;
}

Eigen::Matrix2cd ModeMatrixEvaluator::closed_form(cd omega_c) const {
  const double uc = std::norm(omega_c);
  const double ud = omega_d_ * omega_d_;
  const cd a = gp21_, b = gp41_, c = gp32_, d = gp43_;
  const cd od = omega_d_;

  const cd det = a * b * c * d + ud * (a * b + c * d) + uc * (a * c + b * d) +
                 (uc - ud) * (uc - ud);
  if (std::abs(det) < 1e-300) {
    std::ostringstream os;
    os << "coupled_mode_matrix: singular coherence system (|Omega_c|^2=" << uc
       << ", |Omega_d|^2=" << ud << ")";
    throw SingularParameterError(os.str());
  }

  double p11, p33;
  cd s13;
  ground_state(omega_c, p11, p33, s13);
  const cd s31 = std::conj(s13);

  const cd lam_p = (alpha_ / (2.0 * det)) *
                   (kI * omega_c * (uc + b * d - ud) * s31 -
                    (b * c * d + b * ud + c * uc) * p11);
  const cd kap_p = (cross_ / (2.0 * det)) *
                   (kI * std::conj(od) * (uc - ud - c * d) * s13 -
                    (b + c) * omega_c * std::conj(od) * p33);
  const cd kap_s = (cross_ / (2.0 * det)) *
                   (kI * od * (uc - ud - a * b) * s31 -
                    (b + c) * std::conj(omega_c) * od * p11);
  const cd lam_s = (alpha_s_ / (2.0 * det)) *
                   (kI * std::conj(omega_c) * (a * c + uc - ud) * s13 -
                    (a * b * c + b * uc + c * ud) * p33);

  Eigen::Matrix2cd m;
  m << lam_p, kap_p, kap_s, lam_s;
  return m;
}

Eigen::Matrix2cd ModeMatrixEvaluator::linear_solve(cd omega_c) const {
  double p11, p33;
  cd s13;
  ground_state(omega_c, p11, p33, s13);
  const cd s31 = std::conj(s13);
  const cd od = omega_d_;

  // coherence unknowns x = (sigma_12, sigma_14, sigma_32, sigma_34)
  Eigen::Matrix4cd A;
  A << gp21_, -kI * std::conj(od), kI * omega_c, cd(0),
       -kI * od, gp41_, cd(0), kI * omega_c,
       kI * std::conj(omega_c), cd(0), gp32_, -kI * std::conj(od),
       cd(0), kI * std::conj(omega_c), -kI * od, gp43_;
  A *= 0.5;

  Eigen::PartialPivLU<Eigen::Matrix4cd> lu(A);
  if (std::abs(lu.determinant()) < 1e-300)
    throw SingularParameterError("coupled_mode_matrix_oracle: singular coherence system");

  Eigen::Vector4cd bp, bs;
  bp << kI * p11, cd(0), kI * s31, cd(0);   // unit probe drive
  bs << cd(0), kI * s13, cd(0), kI * p33;   // unit signal drive
  const Eigen::Vector4cd xp = lu.solve(bp);
  const Eigen::Vector4cd xs = lu.solve(bs);

  Eigen::Matrix2cd m;
  m(0, 0) = kI * (alpha_ / 4.0) * xp(0);
  m(0, 1) = kI * (cross_ / 4.0) * xs(0);
  m(1, 0) = kI * (cross_ / 4.0) * xp(3);
  m(1, 1) = kI * (alpha_s_ / 4.0) * xs(3);
  return m;
}

CoupledModeMatrix coupled_mode_matrix(const OperatingPoint& pt, cd omega_c_at_z) {
  return {ModeMatrixEvaluator(pt).closed_form(omega_c_at_z)};
}

CoupledModeMatrix coupled_mode_matrix_oracle(const OperatingPoint& pt, cd omega_c_at_z) {
  return {ModeMatrixEvaluator(pt).linear_solve(omega_c_at_z)};
}

}  // namespace qfc
