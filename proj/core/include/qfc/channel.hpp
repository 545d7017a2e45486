#pragma once

#include <complex>
#include <variant>

#include "qfc/fock.hpp"
#include "qfc/transfer.hpp"

namespace qfc {

// Mode-conversion coefficient of the linear channel: C(0) for
// down-conversion, B(0) for up-conversion.  phase_corrected means a phase
// shifter at the output removes arg(value), so the channel acts with the
// real magnitude |value|.
struct ChannelCoeff {
  std::complex<double> value{0.0, 0.0};
  bool phase_corrected = true;

  double eta() const { return std::norm(value); }
  std::complex<double> effective() const {
    return phase_corrected ? std::complex<double>(std::abs(value), 0.0) : value;
  }

  static ChannelCoeff down_conversion(const TransferMatrix& t, bool corrected = true) {
    return {t.C(), corrected};
  }
  static ChannelCoeff up_conversion(const TransferMatrix& t, bool corrected = true) {
    return {t.B(), corrected};
  }
  static ChannelCoeff from_eta(double eta, bool corrected = true);
};

// Converted density operator for an arbitrary input, by the finite
// ladder-power sum: for each (m, n) the series over l of
//   (-1)^l/l! / sqrt(m! n!) * c^(l+m) cbar^(l+n) * <a^dag^(l+n) a^(l+m)>
// terminates at l = nmax - max(m, n).  Output truncation equals the input's.
DensityMatrix convert_state(const DensityMatrix& rho_in, const ChannelCoeff& coeff);

// Fock input |q>: binomial photon-number mixture, exact Kronecker limb at
// eta = 1.  Output truncation is q.
DensityMatrix convert_fock(int q, double eta);

// Coherent input |beta>: remains coherent with amplitude coeff*beta.
// nmax < 0 auto-sizes the truncation until the Poisson tail is < 1e-10.
DensityMatrix convert_coherent(std::complex<double> beta, const ChannelCoeff& coeff,
                               int nmax = -1);

// Independent reference: a beam splitter of transmissivity eta coupled to a
// vacuum ancilla, built as an exact two-mode rotation followed by a partial
// trace.  Dense in (nmax+1)^2 dimensions; refuses nmax > 20.
DensityMatrix loss_channel_oracle(const DensityMatrix& rho_in, double eta);

struct QuadratureResult {
  double var_x = 0.25;
  double var_y = 0.25;
};

struct FockInput {
  int n = 0;
};
struct CoherentInput {
  std::complex<double> beta;
};
struct SqueezedCoherentInput {
  std::complex<double> alpha;  // displacement (does not enter the variances)
  double r = 0.0;              // squeezing strength
  double phi = 0.0;            // squeezing angle
};
using InputState = std::variant<FockInput, CoherentInput, SqueezedCoherentInput, DensityMatrix>;

// Quadrature variances of the converted output (vacuum = 1/4).  The three
// named families use closed forms; a generic density matrix goes through its
// first and second moments under the linear input-output relation with
// vacuum admixture 1 - eta.
QuadratureResult output_variances(const InputState& input, const ChannelCoeff& coeff);

}  // namespace qfc
