#pragma once

namespace qfc {

// Principal branch W0 of the Lambert W function, for x >= -1/e.
// Halley iteration on top of a rational seed; accurate to ~1e-15 relative.
double lambert_w0(double x);

// W0(exp(xi)) for arbitrary real xi without forming exp(xi).  Needed by the
// coupling-field attenuation profile, whose implicit solution carries
// exponents proportional to the coupling intensity and can overflow double
// range long before the profile itself does.
double lambert_w0_exp(double xi);

}  // namespace qfc
