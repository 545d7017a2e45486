#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qfc/channel.hpp"

namespace qfc {

// ---- single-qubit encodings ------------------------------------------------

struct QubitChannelResult {
  Eigen::Matrix2cd rho;  // logical-basis density matrix
  double leakage = 0.0;  // population the channel moved out of the input code
};

// Single-rail qubit {|0> = vacuum, |1> = one photon}.  Trace is preserved;
// the reported leakage is the population relocated into logical |0>.
QubitChannelResult single_rail_channel(const Eigen::Matrix2cd& rho, const ChannelCoeff& coeff);

// Dual-rail (path) qubit {|0> = |1_D 0_U>, |1> = |0_D 1_U>} converted by two
// independent ensembles.  The full two-mode output, including the vacuum
// term, in the tensor basis |i_D j_U> with index 2*i_D + j_U.
struct TwoModeState {
  Eigen::Matrix4cd rho;
  double vacuum_population() const { return rho(0, 0).real(); }
  Eigen::Matrix2cd logical_block() const;  // {|1_D 0_U>, |0_D 1_U>} block
};

TwoModeState path_channel(const Eigen::Matrix2cd& rho, const ChannelCoeff& coeff_d,
                          const ChannelCoeff& coeff_u);

// Polarization qubit {|0> = |1_H 0_V>, |1> = |0_H 1_V>} routed through two
// converters by polarizing beam splitters.  With phase correction the
// shifters also cancel the +-i factors picked up at the two splitter passes;
// uncorrected output keeps them.
QubitChannelResult polarization_channel(const Eigen::Matrix2cd& rho, const ChannelCoeff& coeff_d,
                                        const ChannelCoeff& coeff_u);

// ---- N qubits ---------------------------------------------------------------

// N single-rail qubits in the tensor basis (qubit 0 = most significant bit).
struct NQubitState {
  Eigen::MatrixXcd rho;
  int n_qubits = 0;

  static NQubitState from_pure(const Eigen::VectorXcd& psi);
  double leakage() const { return 1.0 - rho.trace().real(); }
};

// Product channel over the modes: each factor acts like the single-rail map
// with its own coefficient.  Evaluated in the closed product form over the
// matched index pairs (dense, N <= 12).
NQubitState n_qubit_channel(const NQubitState& in, const std::vector<ChannelCoeff>& coeffs);

// Dual-rail N-qubit conversion by embedding each logical qubit j into the
// one-photon subspace of modes (A_j, B_j), applying the 2N-mode single-rail
// channel, and projecting back onto the code space.  N <= 6.
struct DualRailResult {
  Eigen::MatrixXcd rho_logical;  // 2^N x 2^N, unnormalized
  double leakage = 0.0;          // weight outside the code space
};
DualRailResult dual_rail_n_qubit_channel(const Eigen::MatrixXcd& rho_logical,
                                         const std::vector<ChannelCoeff>& coeff_a,
                                         const std::vector<ChannelCoeff>& coeff_b);

// ---- entangled-pair conversion and the Bell test ----------------------------

struct EprResult {
  Eigen::Matrix4cd rho_post;  // post-selected two-qubit state
  double eta_bar_a = 0.0;
  double eta_bar_b = 0.0;
  double coincidence_probability = 0.0;
  double fidelity = 0.0;  // vs the input Phi+ pair
  double bell_s = 0.0;
  int branch = +1;  // sign of the cross term in the Bell-basis form
};

// Conversion of a polarization-entangled Phi+ pair through four converters
// with efficiencies (A1, A2) and (B1, B2), post-selected on one photon per
// side.
EprResult epr_postselect(double eta_a1, double eta_a2, double eta_b1, double eta_b2);

// CHSH value with the fixed settings A0 = Z, A1 = X, B0 = (Z+X)/sqrt(2),
// B1 = (Z-X)/sqrt(2).
double chsh_value(const Eigen::Matrix4cd& rho);

}  // namespace qfc
