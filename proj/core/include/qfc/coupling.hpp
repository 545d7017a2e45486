#pragma once

#include <complex>
#include <vector>

#include "qfc/point.hpp"

namespace qfc {

// Attenuation of the coupling field along the medium.  The intensity
// u(zeta) = |Omega_c(zeta)|^2 obeys an implicit relation solved in closed
// form by the principal Lambert W branch; the field phase follows from the
// same intensity through Omega_c(zeta) = Omega_c(0) (u/u0)^(C0/D0), so no
// quadrature is needed anywhere in the profile.
class CouplingProfile {
 public:
  // alpha_c = 0 or omega_c0 = 0 yield a constant profile.
  CouplingProfile(const AtomicScheme& scheme, const GammaMatrix& gamma, double delta_c,
                  double omega_c0, double alpha_c);

  double u(double zeta) const;                  // |Omega_c|^2 at zeta in [0,1]
  std::complex<double> omega_c(double zeta) const;

  double omega_c0() const { return omega_c0_; }
  bool constant() const { return constant_; }

  // closed-form constants of the attenuation ODE
  double a0() const { return a0_; }
  double b0() const { return b0_; }
  std::complex<double> c0() const { return c0_; }
  double d0() const { return d0_; }

 private:
  double omega_c0_;
  bool constant_;
  double a0_, b0_, d0_;
  std::complex<double> c0_;
  double log_bu0_over_a0_;  // log((B0/A0) u(0)), cached
};

// Sampled view of the profile on a uniform grid, as emitted by the CLI.
struct CouplingProfileGrid {
  std::vector<double> zeta;
  std::vector<std::complex<double>> omega_c;
  std::vector<double> u;
};

CouplingProfile coupling_profile(const OperatingPoint& pt);
CouplingProfileGrid coupling_profile_grid(const OperatingPoint& pt, int grid_size);

}  // namespace qfc
