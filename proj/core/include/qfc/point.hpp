#pragma once

#include <optional>

#include "qfc/scheme.hpp"

namespace qfc {

// One steady-state operating point of the converter: the five control
// parameters at a fixed probe OD.  The response frequency is pinned to zero
// (single-frequency steady state).
struct OperatingPoint {
  AtomicScheme scheme;
  GammaMatrix gamma;

  double delta_p = 0.0;   // probe detuning
  double delta_c = 0.0;   // coupling detuning
  double delta = 0.0;     // two-photon (signal) detuning
  double omega_c0 = 0.0;  // coupling Rabi frequency at the entry face, >= 0
  double omega_d = 0.0;   // driving Rabi frequency, >= 0
  double alpha = 0.0;     // probe OD

  std::optional<double> alpha_c_override;
  std::optional<double> alpha_s_override;

  CouplingScales scales() const {
    return od_scalings(scheme, alpha, alpha_c_override, alpha_s_override);
  }
};

OperatingPoint make_point(Band band, double delta_p, double delta_c, double delta,
                          double omega_c0, double omega_d, double alpha,
                          double gamma_deph = 0.0,
                          GammaConvention convention = GammaConvention::FineStructureWidths);

}  // namespace qfc
