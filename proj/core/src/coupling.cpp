#include "qfc/coupling.hpp"

#include <cmath>

#include "qfc/errors.hpp"
#include "qfc/lambert.hpp"

namespace qfc {

CouplingProfile::CouplingProfile(const AtomicScheme& scheme, const GammaMatrix& gamma,
                                 double delta_c, double omega_c0, double alpha_c)
    : omega_c0_(omega_c0) {
  if (omega_c0 < 0.0) throw std::domain_error("CouplingProfile: omega_c0 must be >= 0");
  if (alpha_c < 0.0) throw std::domain_error("CouplingProfile: alpha_c must be >= 0");

  const double G31 = scheme.decay_31();
  const double g31 = gamma.g31();
  a0_ = 2.0 * G31 * (g31 * g31 + 4.0 * delta_c * delta_c);
  b0_ = 4.0 * g31;
  c0_ = -alpha_c * G31 * G31 * std::complex<double>(g31, 2.0 * delta_c);
  d0_ = 2.0 * c0_.real();

  constant_ = (alpha_c == 0.0) || (omega_c0 == 0.0);
  if (!constant_ && !(a0_ > 0.0))
    throw std::domain_error("CouplingProfile: needs decay_31 > 0 and gamma_31 > 0");
  log_bu0_over_a0_ = constant_ ? 0.0 : std::log(b0_ * omega_c0 * omega_c0 / a0_);
}

double CouplingProfile::u(double zeta) const {
  const double u0 = omega_c0_ * omega_c0_;
  if (constant_) return u0;
  // u = (A0/B0) W0[(B0/A0) u0 exp(D0 zeta / A0 + B0 u0 / A0)], evaluated in
  // log-argument form: the exponent scales with u0 and overflows early.
  const double xi = log_bu0_over_a0_ + d0_ * zeta / a0_ + b0_ * u0 / a0_;
  return (a0_ / b0_) * lambert_w0_exp(xi);
}

std::complex<double> CouplingProfile::omega_c(double zeta) const {
  if (omega_c0_ == 0.0) return {0.0, 0.0};
  if (constant_) return {omega_c0_, 0.0};
  // phase and magnitude together: Omega_c(0) (u/u0)^(C0/D0)
  const double ratio = u(zeta) / (omega_c0_ * omega_c0_);
  return omega_c0_ * std::exp((c0_ / d0_) * std::log(ratio));
}

CouplingProfile coupling_profile(const OperatingPoint& pt) {
  return CouplingProfile(pt.scheme, pt.gamma, pt.delta_c, pt.omega_c0, pt.scales().alpha_c);
}

CouplingProfileGrid coupling_profile_grid(const OperatingPoint& pt, int grid_size) {
  if (grid_size < 2) throw std::domain_error("coupling_profile_grid: grid_size must be >= 2");
  const CouplingProfile prof = coupling_profile(pt);
  CouplingProfileGrid g;
  g.zeta.resize(grid_size);
  g.omega_c.resize(grid_size);
  g.u.resize(grid_size);
  for (int k = 0; k < grid_size; ++k) {
    const double z = static_cast<double>(k) / (grid_size - 1);
    g.zeta[k] = z;
    g.omega_c[k] = prof.omega_c(z);
    g.u[k] = prof.u(z);
  }
  return g;
}

}  // namespace qfc
