#pragma once

namespace qfc {

// Every rate, detuning, and Rabi frequency in this library is expressed in
// units of Gamma = 2*pi * 6.063 MHz, the natural linewidth of the Rb-87 D2
// line.  The propagation coordinate is zeta = z/L in [0, 1], so no length,
// atom number, or dipole constant appears at runtime: the medium enters only
// through the optical depths alpha, alpha_c, alpha_s.
inline constexpr double kGammaRefMHz = 6.063;

}  // namespace qfc
