#include "qfc/lambert.hpp"

#include <cmath>
#include <limits>

#include "qfc/errors.hpp"

namespace qfc {
namespace {

// Halley steps for w*e^w = x, seeded with w0.  Quadratic steps shrink until
// they hit the rounding floor, so the stop test is a small multiple of eps.
double halley(double x, double w) {
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    const double step = f / (ew * wp1 - 0.5 * (w + 2.0) * f / wp1);
    w -= step;
    const double tol = 1e-13 * (1.0 + std::abs(w));
    if (std::abs(step) <= tol) return w;
    if (std::abs(step) >= prev && prev <= 1e4 * tol) return w;  // rounding floor
    prev = std::abs(step);
  }
  throw NumericalError("lambert_w0: Halley iteration failed to converge");
}

// Halley steps for w + log(w) = xi (the log-domain form), valid for w > 0.
double halley_log(double xi, double w) {
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 64; ++it) {
    const double f = w + std::log(w) - xi;
    const double fp = 1.0 + 1.0 / w;
    const double fpp = -1.0 / (w * w);
    const double step = f / (fp - 0.5 * f * fpp / fp);
    w -= step;
    if (w <= 0.0) w = std::numeric_limits<double>::min();
    const double tol = 1e-13 * (1.0 + std::abs(w));
    if (std::abs(step) <= tol) return w;
    if (std::abs(step) >= prev && prev <= 1e4 * tol) return w;
    prev = std::abs(step);
  }
  throw NumericalError("lambert_w0_exp: Halley iteration failed to converge");
}

}  // namespace

double lambert_w0(double x) {
  constexpr double kInvE = 0.36787944117144233;
  if (std::isnan(x) || x < -kInvE) {
    throw NumericalError("lambert_w0: argument below -1/e");
  }
  if (x == 0.0) return 0.0;
  if (x + kInvE < 1e-12) return -1.0 + std::sqrt(2.0 * std::exp(1.0) * (x + kInvE));

  double w;
  if (x < 1.0) {
    // series seed around 0
    w = x * (1.0 - x + 1.5 * x * x);
    if (x < -0.25) {
      const double eta = 2.0 + 2.0 * std::exp(1.0) * x;
      w = -1.0 + std::sqrt(eta);
    }
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1 > 0 ? l1 : 1.0);
    w = l1 - (l1 > 1.0 ? l2 - l2 / l1 : 0.0);
  }
  return halley(x, w);
}

double lambert_w0_exp(double xi) {
  // For moderate xi the direct route is exact enough and cheapest.
  if (xi < 500.0) return lambert_w0(std::exp(xi));
  // Asymptotic seed: w = xi - log(xi) + log(xi)/xi.
  const double l = std::log(xi);
  return halley_log(xi, xi - l + l / xi);
}

}  // namespace qfc
