#include "qfc/qubit.hpp"

#include <cmath>

#include "qfc/errors.hpp"

namespace qfc {

namespace {
using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};
}  // namespace

QubitChannelResult single_rail_channel(const Eigen::Matrix2cd& rho, const ChannelCoeff& coeff) {
  const cd c = coeff.effective();
  const double eta = coeff.eta();
  QubitChannelResult out;
  out.rho(0, 0) = rho(0, 0) + (1.0 - eta) * rho(1, 1);
  out.rho(0, 1) = std::conj(c) * rho(0, 1);
  out.rho(1, 0) = c * rho(1, 0);
  out.rho(1, 1) = eta * rho(1, 1);
  out.leakage = ((1.0 - eta) * rho(1, 1)).real();
  return out;
}

Eigen::Matrix2cd TwoModeState::logical_block() const {
  Eigen::Matrix2cd b;
  // logical |0> = |1_D 0_U> (index 2), logical |1> = |0_D 1_U> (index 1)
  b << rho(2, 2), rho(2, 1), rho(1, 2), rho(1, 1);
  return b;
}

TwoModeState path_channel(const Eigen::Matrix2cd& rho, const ChannelCoeff& coeff_d,
                          const ChannelCoeff& coeff_u) {
  const cd cd_ = coeff_d.effective();
  const cd cu_ = coeff_u.effective();
  const double ed = coeff_d.eta(), eu = coeff_u.eta();

  TwoModeState out;
  out.rho.setZero();
  out.rho(2, 2) = ed * rho(0, 0);
  out.rho(2, 1) = cd_ * std::conj(cu_) * rho(0, 1);
  out.rho(1, 2) = std::conj(cd_) * cu_ * rho(1, 0);
  out.rho(1, 1) = eu * rho(1, 1);
  out.rho(0, 0) = (1.0 - ed) * rho(0, 0) + (1.0 - eu) * rho(1, 1);
  return out;
}

QubitChannelResult polarization_channel(const Eigen::Matrix2cd& rho, const ChannelCoeff& coeff_d,
                                        const ChannelCoeff& coeff_u) {
  const double ed = coeff_d.eta(), eu = coeff_u.eta();
  const bool corrected = coeff_d.phase_corrected && coeff_u.phase_corrected;
  // the two splitter passes contribute -i on the 01 coherence when the
  // shifters are not set to cancel them
  const cd phase = corrected ? cd(1.0, 0.0) : -kI;

  QubitChannelResult out;
  out.rho(0, 0) = ed * rho(0, 0);
  out.rho(0, 1) = phase * coeff_d.effective() * std::conj(coeff_u.effective()) * rho(0, 1);
  out.rho(1, 0) = std::conj(phase) * std::conj(coeff_d.effective()) * coeff_u.effective() * rho(1, 0);
  out.rho(1, 1) = eu * rho(1, 1);
  out.leakage = ((1.0 - ed) * rho(0, 0) + (1.0 - eu) * rho(1, 1)).real();
  return out;
}

NQubitState NQubitState::from_pure(const Eigen::VectorXcd& psi) {
  NQubitState s;
  s.rho = psi * psi.adjoint();
  int n = 0;
  while ((1 << n) < psi.size()) ++n;
  if ((1 << n) != psi.size())
    throw std::domain_error("NQubitState: state dimension must be a power of two");
  s.n_qubits = n;
  return s;
}

NQubitState n_qubit_channel(const NQubitState& in, const std::vector<ChannelCoeff>& coeffs) {
  const int n = in.n_qubits;
  if (n < 1 || static_cast<int>(coeffs.size()) != n)
    throw std::domain_error("n_qubit_channel: need one coefficient per qubit");
  if (n > 12) throw ResourceError("n_qubit_channel: dense cap is 12 qubits");
  const int dim = 1 << n;

  std::vector<cd> ceff(n);
  std::vector<double> eta(n), loss(n);
  for (int j = 0; j < n; ++j) {
    ceff[j] = coeffs[j].effective();
    eta[j] = coeffs[j].eta();
    loss[j] = 1.0 - eta[j];
  }
  const auto bit = [&](int word, int j) { return (word >> (n - 1 - j)) & 1; };

  NQubitState out;
  out.n_qubits = n;
  out.rho = Eigen::MatrixXcd::Zero(dim, dim);

  for (int m = 0; m < dim; ++m) {
    for (int nn = 0; nn < dim; ++nn) {
      // per-mode factors for the matched index pattern
      cd base = 1.0;
      for (int j = 0; j < n; ++j) {
        const int mj = bit(m, j), nj = bit(nn, j);
        if (mj == 1 && nj == 1) base *= eta[j];
        else if (mj == 1 && nj == 0) base *= ceff[j];
        else if (mj == 0 && nj == 1) base *= std::conj(ceff[j]);
      }
      // modes with (0,0) at the output collect both the untouched vacuum and
      // the decayed one-photon population of the input
      const int zmask = ~(m | nn) & (dim - 1);
      cd acc = 0.0;
      int s = zmask;
      while (true) {
        double w = 1.0;
        for (int j = 0; j < n; ++j)
          if ((s >> (n - 1 - j)) & 1) w *= loss[j];
        acc += w * in.rho(m | s, nn | s);
        if (s == 0) break;
        s = (s - 1) & zmask;
      }
      out.rho(m, nn) = base * acc;
    }
  }
  return out;
}

DualRailResult dual_rail_n_qubit_channel(const Eigen::MatrixXcd& rho_logical,
                                         const std::vector<ChannelCoeff>& coeff_a,
                                         const std::vector<ChannelCoeff>& coeff_b) {
  int n = 0;
  while ((1 << n) < rho_logical.rows()) ++n;
  if ((1 << n) != rho_logical.rows() || rho_logical.rows() != rho_logical.cols())
    throw std::domain_error("dual_rail_n_qubit_channel: dimension must be 2^N");
  if (n > 6) throw ResourceError("dual_rail_n_qubit_channel: dense cap is 6 dual-rail qubits");
  if (static_cast<int>(coeff_a.size()) != n || static_cast<int>(coeff_b.size()) != n)
    throw std::domain_error("dual_rail_n_qubit_channel: need one coefficient pair per qubit");

  // embed: logical |s>_j -> modes (A_j, B_j) = (s, 1-s); mode order
  // A_1 B_1 A_2 B_2 ... with A_1 most significant
  const int modes = 2 * n;
  const int big = 1 << modes;
  const auto embed_index = [&](int logical) {
    int w = 0;
    for (int j = 0; j < n; ++j) {
      const int s = (logical >> (n - 1 - j)) & 1;
      w |= s << (modes - 1 - 2 * j);
      w |= (1 - s) << (modes - 2 - 2 * j);
    }
    return w;
  };

  NQubitState wide;
  wide.n_qubits = modes;
  wide.rho = Eigen::MatrixXcd::Zero(big, big);
  const int dim = 1 << n;
  for (int p = 0; p < dim; ++p)
    for (int q = 0; q < dim; ++q) wide.rho(embed_index(p), embed_index(q)) = rho_logical(p, q);

  std::vector<ChannelCoeff> all;
  all.reserve(modes);
  for (int j = 0; j < n; ++j) {
    all.push_back(coeff_a[j]);
    all.push_back(coeff_b[j]);
  }
  const NQubitState conv = n_qubit_channel(wide, all);

  DualRailResult out;
  out.rho_logical = Eigen::MatrixXcd::Zero(dim, dim);
  for (int p = 0; p < dim; ++p)
    for (int q = 0; q < dim; ++q) out.rho_logical(p, q) = conv.rho(embed_index(p), embed_index(q));
  out.leakage = 1.0 - out.rho_logical.trace().real();
  return out;
}

EprResult epr_postselect(double eta_a1, double eta_a2, double eta_b1, double eta_b2) {
  for (double e : {eta_a1, eta_a2, eta_b1, eta_b2})
    if (e < 0.0 || e > 1.0) throw std::domain_error("epr_postselect: efficiencies in [0,1]");
  if (eta_a1 * eta_a2 == 0.0 && eta_b1 * eta_b2 == 0.0)
    throw std::domain_error("epr_postselect: no coincidences, post-selection undefined");

  EprResult r;
  r.eta_bar_a = std::sqrt(eta_a1 * eta_a2);
  r.eta_bar_b = std::sqrt(eta_b1 * eta_b2);
  const double sum2 = r.eta_bar_a * r.eta_bar_a + r.eta_bar_b * r.eta_bar_b;

  r.rho_post.setZero();
  r.rho_post(0, 0) = r.eta_bar_b * r.eta_bar_b / sum2;
  r.rho_post(3, 3) = r.eta_bar_a * r.eta_bar_a / sum2;
  r.rho_post(0, 3) = r.rho_post(3, 0) = r.eta_bar_a * r.eta_bar_b / sum2;

  r.coincidence_probability = 0.5 * sum2;
  r.fidelity = (r.eta_bar_a + r.eta_bar_b) / std::sqrt(2.0 * sum2);
  r.bell_s = 2.0 * std::sqrt(2.0) * r.fidelity * r.fidelity;
  r.branch = r.eta_bar_b >= r.eta_bar_a ? +1 : -1;
  return r;
}

double chsh_value(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix2cd sz, sx;
  sz << 1, 0, 0, -1;
  sx << 0, 1, 1, 0;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  const auto kron2 = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd k;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return k;
  };

  const Eigen::Matrix2cd b0 = inv_sqrt2 * (sz + sx);
  const Eigen::Matrix2cd b1 = inv_sqrt2 * (sz - sx);
  const Eigen::Matrix4cd bell_op =
      kron2(sz, b0) + kron2(sz, b1) + kron2(sx, b0) - kron2(sx, b1);
  return (rho * bell_op).trace().real();
}

}  // namespace qfc
