#pragma once

#include <Eigen/Dense>
#include <string>

#include "qfc/coupling.hpp"
#include "qfc/mode_matrix.hpp"
#include "qfc/point.hpp"

namespace qfc {

enum class PropagationMethod { ExactSliced, Magnus1, Magnus2 };

PropagationMethod parse_method(const std::string& tag);
std::string method_name(PropagationMethod m);

struct PropagationControls {
  // exact-sliced: midpoint product refined by doubling + Richardson
  double tol = 1e-8;
  int initial_slices = 4096;
  int max_slices = 1 << 22;
  // magnus: composite-Simpson intervals for the ordered integrals
  int magnus_intervals = 256;
};

// End-to-end linear map (a_p, a_s)(exit) = [[A,B],[C,D]] (a_p, a_s)(entry).
struct TransferMatrix {
  Eigen::Matrix2cd m;
  PropagationMethod method = PropagationMethod::ExactSliced;
  int slices = 0;                  // slices (exact) or Simpson intervals (magnus)
  double refinement_error = 0.0;   // Richardson estimate (exact-sliced only)

  std::complex<double> A() const { return m(0, 0); }
  std::complex<double> B() const { return m(0, 1); }
  std::complex<double> C() const { return m(1, 0); }
  std::complex<double> D() const { return m(1, 1); }
};

// Probe/signal transmittances and conversion efficiencies.
struct ConversionMetrics {
  double T_d = 1.0;    // |A|^2, probe transmittance (down-conversion)
  double eta_d = 0.0;  // |C|^2, down-conversion efficiency
  double T_u = 1.0;    // |D|^2, signal transmittance (up-conversion)
  double eta_u = 0.0;  // |B|^2, up-conversion efficiency
};

TransferMatrix transfer_matrix(const OperatingPoint& pt, PropagationMethod method,
                               const PropagationControls& controls = {});

// Same propagation with the coupling field held at its entry value
// (no coupling absorption).  With a constant generator the first Magnus
// term is already exact.
TransferMatrix nonabsorbing_transfer(const OperatingPoint& pt, PropagationMethod method,
                                     const PropagationControls& controls = {});

ConversionMetrics conversion_metrics(const TransferMatrix& t);

// Convenience: eta_d at a point, exact-sliced unless told otherwise.
double conversion_efficiency(const OperatingPoint& pt,
                             PropagationMethod method = PropagationMethod::ExactSliced,
                             const PropagationControls& controls = {});

}  // namespace qfc
