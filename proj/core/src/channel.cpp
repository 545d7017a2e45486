#include "qfc/channel.hpp"

#include <cmath>
#include <sstream>

#include "qfc/errors.hpp"

namespace qfc {

namespace {
using cd = std::complex<double>;
// The ladder-power series is an alternating sum with strong cancellation at
// large amplitudes; extended precision in the accumulation keeps the final
// double-precision entries accurate to ~1e-12.
using cl = std::complex<long double>;

long double sqrt_fact_ratio(int hi, int lo) {
  // sqrt(hi!/lo!) for hi >= lo
  return std::exp(0.5L * (std::lgammal(hi + 1.0L) - std::lgammal(lo + 1.0L)));
}

// tr{ a^dag^p a^q rho } on the truncated space
cl ladder_moment(const Eigen::MatrixXcd& rho, int p, int q) {
  const int dim = static_cast<int>(rho.rows());
  cl s = 0.0L;
  for (int i = q; i < dim; ++i) {
    const int j = i - q + p;
    if (j >= dim) continue;
    const cd r = rho(i, j);
    s += cl(r.real(), r.imag()) * sqrt_fact_ratio(i, i - q) * sqrt_fact_ratio(j, i - q);
  }
  return s;
}

double binom(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

}  // namespace

ChannelCoeff ChannelCoeff::from_eta(double eta, bool corrected) {
  if (eta < 0.0 || eta > 1.0) throw std::domain_error("ChannelCoeff: eta must be in [0,1]");
  return {cd(std::sqrt(eta), 0.0), corrected};
}

DensityMatrix convert_state(const DensityMatrix& rho_in, const ChannelCoeff& coeff) {
  const int nmax = rho_in.nmax();
  const cd cdbl = coeff.effective();
  const cl c(cdbl.real(), cdbl.imag());
  const cl cb = std::conj(c);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(nmax + 1, nmax + 1);
  for (int m = 0; m <= nmax; ++m) {
    for (int n = 0; n <= nmax; ++n) {
      const int lcap = nmax - std::max(m, n);
      cl sum = 0.0L;
      long double chi = 1.0L / std::sqrt(std::tgammal(m + 1.0L) * std::tgammal(n + 1.0L));
      cl cpow = std::pow(c, m) * std::pow(cb, n);
      const cl cc = c * cb;  // |c|^2
      for (int l = 0; l <= lcap; ++l) {
        sum += chi * cpow * ladder_moment(rho_in.matrix(), l + n, l + m);
        chi *= -1.0L / (l + 1.0L);
        cpow *= cc;
      }
      out(m, n) = cd(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
    }
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix convert_fock(int q, double eta) {
  if (q < 0) throw std::domain_error("convert_fock: q must be >= 0");
  if (eta < 0.0 || eta > 1.0) throw std::domain_error("convert_fock: eta must be in [0,1]");
  DensityMatrix d(q);
  if (eta == 1.0) {
    d.matrix()(q, q) = 1.0;
    return d;
  }
  for (int n = 0; n <= q; ++n)
    d.matrix()(n, n) = binom(q, n) * std::pow(eta, n) * std::pow(1.0 - eta, q - n);
  return d;
}

DensityMatrix convert_coherent(std::complex<double> beta, const ChannelCoeff& coeff, int nmax) {
  const cd amp = coeff.effective() * beta;
  const double mu = std::norm(amp);
  if (nmax < 0) {
    nmax = 8;
    while (true) {
      const Eigen::VectorXcd psi = coherent_amplitudes(amp, nmax);
      if (1.0 - psi.squaredNorm() < 1e-10 || nmax > 4096) break;
      nmax *= 2;
    }
    if (nmax > 4096)
      throw TruncationError("convert_coherent: amplitude too large for a dense Fock basis", mu);
  } else {
    const Eigen::VectorXcd psi = coherent_amplitudes(amp, nmax);
    const double leak = 1.0 - psi.squaredNorm();
    if (leak > 1e-8) {
      std::ostringstream os;
      os << "convert_coherent: truncation nmax=" << nmax << " leaks " << leak;
      throw TruncationError(os.str(), leak);
    }
  }
  return DensityMatrix::coherent(amp, nmax);
}

DensityMatrix loss_channel_oracle(const DensityMatrix& rho_in, double eta) {
  if (eta < 0.0 || eta > 1.0) throw std::domain_error("loss_channel_oracle: eta in [0,1]");
  const int dim = rho_in.dim();
  const int nmax = dim - 1;
  if (nmax > 20)
    throw ResourceError("loss_channel_oracle: two-mode space too large (nmax > 20)");

  // Exact rotation U = exp[theta (a^dag b - a b^dag)] applied to rho (x) |0><0|.
  // The generator conserves the total photon number, so it is exponentiated
  // block by block: within total number N the basis {|n, N-n>} makes it a
  // real antisymmetric tridiagonal, diagonalized as i*G Hermitian.
  // Only the columns U|i, 0> are needed; psi[i](n) = <n, i-n| U |i, 0>.
  const double theta = std::acos(std::min(1.0, std::sqrt(eta)));
  std::vector<Eigen::VectorXcd> psi(dim);
  for (int total = 0; total <= nmax; ++total) {
    const int bd = total + 1;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(bd, bd);
    for (int n = 0; n < total; ++n) {
      // <n+1, total-n-1| a^dag b |n, total-n> coupling
      const double t = theta * std::sqrt(double(n + 1) * double(total - n));
      h(n + 1, n) = cd(0.0, 1.0) * t;
      h(n, n + 1) = cd(0.0, -1.0) * t;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd phases(bd);
    for (int k = 0; k < bd; ++k) phases(k) = std::polar(1.0, -es.eigenvalues()(k));
    // start in |total, 0>, the last basis vector of the block
    psi[total] = es.eigenvectors() *
                 (phases.asDiagonal() * es.eigenvectors().adjoint().col(bd - 1));
  }

  // partial trace over the ancilla: matched loss k = i - m = j - m'
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int m = 0; m <= i; ++m) {
      const int k = i - m;
      for (int mp = 0; mp + k < dim; ++mp) {
        const int j = mp + k;
        out(m, mp) += rho_in(i, j) * psi[i](m) * std::conj(psi[j](mp));
      }
    }
  }
  return DensityMatrix(std::move(out));
}

QuadratureResult output_variances(const InputState& input, const ChannelCoeff& coeff) {
  const cd c = coeff.effective();
  const double eta = coeff.eta();
  QuadratureResult r;

  if (std::holds_alternative<FockInput>(input)) {
    const int n = std::get<FockInput>(input).n;
    if (n < 0) throw std::domain_error("output_variances: Fock index must be >= 0");
    r.var_x = r.var_y = 0.25 * (1.0 + 2.0 * n * eta);
    return r;
  }
  if (std::holds_alternative<CoherentInput>(input)) {
    return r;  // vacuum variances for any eta
  }
  if (std::holds_alternative<SqueezedCoherentInput>(input)) {
    const auto& s = std::get<SqueezedCoherentInput>(input);
    const double ch = std::cosh(2.0 * s.r), sh = std::sinh(2.0 * s.r);
    const double mod = (c * c * std::polar(1.0, s.phi)).real();
    r.var_x = 0.25 * (1.0 + eta * (ch - 1.0) - mod * sh);
    r.var_y = 0.25 * (1.0 + eta * (ch - 1.0) + mod * sh);
    return r;
  }

  const auto& rho = std::get<DensityMatrix>(input);
  const double deficit = std::abs(1.0 - rho.trace_real());
  if (deficit > 1e-8)
    throw TruncationError("output_variances: input trace leaks past the truncation", deficit);
  const cd m1 = mean_lowering(rho);
  const cd m2 = mean_lowering_sq(rho);
  const double nb = mean_number(rho);
  const double re2 = (c * c * m2).real();
  const cd cm1 = c * m1;
  r.var_x = 0.25 * (2.0 * re2 + 2.0 * eta * nb + 1.0) - cm1.real() * cm1.real();
  r.var_y = 0.25 * (2.0 * eta * nb - 2.0 * re2 + 1.0) - cm1.imag() * cm1.imag();
  return r;
}

}  // namespace qfc
