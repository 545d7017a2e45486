#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <random>
#include <vector>

#include "qfc/channel.hpp"
#include "qfc/point.hpp"

namespace qfc_test {

using cd = std::complex<double>;

// Reference operating points: optimized parameter sets and conversion
// efficiencies at ten optical depths per band, unconstrained ("unb") and
// |param| <= 50 ("cap") columns.
struct TablePoint {
  qfc::Band band;
  double od;
  std::array<double, 5> params;  // delta_p, delta_c, delta, omega_c, omega_d
  double ce;
  bool capped;
};

inline const std::vector<TablePoint>& table_points() {
  using qfc::Band;
  static const std::vector<TablePoint> t = {
      {Band::E1367, 50, {13, -31, 14, 50, 7}, 0.647, false},
      {Band::E1367, 100, {25, -54, 26, 90, 13}, 0.790, false},
      {Band::E1367, 150, {35, -80, 37, 130, 19}, 0.851, false},
      {Band::E1367, 200, {47, -99, 50, 170, 25}, 0.884, false},
      {Band::E1367, 250, {59, -123, 62, 210, 31}, 0.905, false},
      {Band::E1367, 50, {5, -12, 6, 20, 7}, 0.639, true},
      {Band::E1367, 100, {6, -21, 10, 33, 12}, 0.779, true},
      {Band::E1367, 150, {8, -31, 14, 46, 17}, 0.839, true},
      {Band::E1367, 200, {6, -32, 16, 49, 21}, 0.869, true},
      {Band::E1367, 250, {7, -24, 20, 50, 26}, 0.891, true},
      {Band::C1529, 200, {26, -31, 25, 74, 9}, 0.531, false},
      {Band::C1529, 400, {49, -64, 48, 145, 16}, 0.695, false},
      {Band::C1529, 600, {73, -91, 74, 219, 22}, 0.774, false},
      {Band::C1529, 800, {93, -119, 94, 280, 29}, 0.821, false},
      {Band::C1529, 1000, {116, -154, 116, 350, 36}, 0.851, false},
      {Band::C1529, 200, {13, -10, 11, 28, 11}, 0.516, true},
      {Band::C1529, 400, {24, -15, 21, 50, 19}, 0.673, true},
      {Band::C1529, 600, {33, -7, 26, 50, 29}, 0.740, true},
      {Band::C1529, 800, {35, -5, 29, 50, 37}, 0.787, true},
      {Band::C1529, 1000, {44, -2, 31, 50, 47}, 0.824, true},
  };
  return t;
}

inline qfc::OperatingPoint table_operating_point(const TablePoint& tp) {
  return qfc::make_point(tp.band, tp.params[0], tp.params[1], tp.params[2], tp.params[3],
                         tp.params[4], tp.od);
}

// random operating point in a physically sensible range
inline qfc::OperatingPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const qfc::Band band = u01(rng) < 0.5 ? qfc::Band::E1367 : qfc::Band::C1529;
  auto sym = [&](double lim) { return (2.0 * u01(rng) - 1.0) * lim; };
  return qfc::make_point(band, sym(150.0), sym(150.0), sym(150.0), 300.0 * u01(rng),
                         60.0 * u01(rng), 1.0 + 299.0 * u01(rng));
}

// Steady state of the driven two-level {|1>,|3>} subsystem from the raw
// optical Bloch equations, solved as a dense 3x3 real linear system in
// (sigma_33, Re sigma_13, Im sigma_13).  Independent of the closed form.
struct BlochSteadyState {
  double p11;
  cd c13;
};

inline BlochSteadyState bloch_steady_state_oracle(double decay31, double gamma31,
                                                  double delta_c, cd omega_c) {
  const double ocr = omega_c.real(), oci = omega_c.imag();
  Eigen::Matrix3d A;
  Eigen::Vector3d b;
  // photon scattering balances the decay of the driven-state population
  A << -decay31, -oci, ocr,
       // real part of the coherence equation
       oci, -0.5 * gamma31, -delta_c,
       // imaginary part
       -ocr, delta_c, -0.5 * gamma31;
  b << 0.0, 0.5 * oci, -0.5 * ocr;
  const Eigen::Vector3d x = A.partialPivLu().solve(b);
  return {1.0 - x(0), cd(x(1), x(2))};
}

// classic RK4 on a complex scalar ODE dw/dz = f(z, w)
template <typename F>
inline cd rk4_integrate(F&& f, cd w0, double z0, double z1, int steps) {
  cd w = w0;
  const double h = (z1 - z0) / steps;
  double z = z0;
  for (int k = 0; k < steps; ++k) {
    const cd k1 = f(z, w);
    const cd k2 = f(z + 0.5 * h, w + 0.5 * h * k1);
    const cd k3 = f(z + 0.5 * h, w + 0.5 * h * k2);
    const cd k4 = f(z + h, w + h * k3);
    w += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    z += h;
  }
  return w;
}

// Per-mode Kraus map of the one-photon loss channel acting on qubit j of an
// N-qubit state: K0 = diag(1, c), K1 = sqrt(1 - |c|^2) |0><1|.
inline Eigen::MatrixXcd apply_qubit_loss_kraus(const Eigen::MatrixXcd& rho, int n_qubits,
                                               int j, cd c) {
  const int dim = 1 << n_qubits;
  const double loss = std::sqrt(std::max(0.0, 1.0 - std::norm(c)));
  Eigen::MatrixXcd k0 = Eigen::MatrixXcd::Identity(2, 2);
  k0(1, 1) = c;
  Eigen::MatrixXcd k1 = Eigen::MatrixXcd::Zero(2, 2);
  k1(0, 1) = loss;

  const auto lift = [&](const Eigen::MatrixXcd& k) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(dim, dim);
    for (int r = 0; r < dim; ++r) {
      const int rb = (r >> (n_qubits - 1 - j)) & 1;
      for (int cidx = 0; cidx < dim; ++cidx) {
        const int cb = (cidx >> (n_qubits - 1 - j)) & 1;
        if ((r & ~(1 << (n_qubits - 1 - j))) != (cidx & ~(1 << (n_qubits - 1 - j)))) continue;
        op(r, cidx) = k(rb, cb);
      }
    }
    return op;
  };
  const Eigen::MatrixXcd op0 = lift(k0), op1 = lift(k1);
  return op0 * rho * op0.adjoint() + op1 * rho * op1.adjoint();
}

}  // namespace qfc_test
