#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

namespace qfc {

// exp(M) for complex 2x2 M in closed form.  Split M = mu*I + D with D
// traceless; then D^2 = s^2 * I and
//   exp(M) = e^mu [cosh(s) I + sinhc(s) D],   sinhc(s) = sinh(s)/s.
// sinhc and cosh are even in s, so the branch of the complex square root is
// irrelevant.  Near s = 0 the ratio sinh(s)/s cancels catastrophically, so a
// short even series takes over below |s^2| = 1e-8.
inline Eigen::Matrix2cd expm2(const Eigen::Matrix2cd& m) {
  using cd = std::complex<double>;
  const cd mu = 0.5 * (m(0, 0) + m(1, 1));
  const cd d00 = m(0, 0) - mu;
  const cd s2 = d00 * d00 + m(0, 1) * m(1, 0);

  cd ch, shc;
  if (std::abs(s2) < 1e-8) {
    ch = 1.0 + s2 * (0.5 + s2 * (1.0 / 24.0 + s2 / 720.0));
    shc = 1.0 + s2 * (1.0 / 6.0 + s2 * (1.0 / 120.0 + s2 / 5040.0));
  } else {
    const cd s = std::sqrt(s2);
    ch = std::cosh(s);
    shc = std::sinh(s) / s;
  }

  const cd emu = std::exp(mu);
  Eigen::Matrix2cd r;
  r(0, 0) = emu * (ch + shc * d00);
  r(0, 1) = emu * shc * m(0, 1);
  r(1, 0) = emu * shc * m(1, 0);
  r(1, 1) = emu * (ch - shc * d00);
  return r;
}

}  // namespace qfc
