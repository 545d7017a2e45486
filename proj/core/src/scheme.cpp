#include "qfc/scheme.hpp"

#include <cmath>

#include "qfc/errors.hpp"
#include "qfc/point.hpp"
#include "qfc/units.hpp"

namespace qfc {

Band parse_band(const std::string& tag) {
  if (tag == "e" || tag == "E" || tag == "e1367" || tag == "E1367") return Band::E1367;
  if (tag == "c" || tag == "C" || tag == "c1529" || tag == "C1529") return Band::C1529;
  throw ConfigError("unknown band tag '" + tag + "' (expected e1367 or c1529)");
}

std::string band_name(Band band) {
  return band == Band::E1367 ? "e1367" : "c1529";
}

AtomicScheme build_scheme(Band band) {
  AtomicScheme s;
  s.band = band;
  s.table_version = "rb87-v1";
  s.gamma_fs_795 = 5.745 / kGammaRefMHz;
  s.gamma_fs_780 = 6.063 / kGammaRefMHz;
  s.lambda_p = 794.98;
  s.lambda_c = 780.24;
  s.a21_sq = 0.5;
  s.a31_sq = 1.0;
  switch (band) {
    case Band::E1367:
      s.gamma_fs_d = 1.008 / kGammaRefMHz;  // 5P1/2 -> 6S1/2, 1324 nm
      s.gamma_fs_s = 2.087 / kGammaRefMHz;  // 5P3/2 -> 6S1/2, 1367 nm
      s.a42_sq = 0.5;
      s.a43_sq = 0.5;
      s.lambda_d = 1324.0;
      s.lambda_s = 1367.0;
      break;
    case Band::C1529:
      s.gamma_fs_d = 1.703 / kGammaRefMHz;  // 5P1/2 -> 4D3/2, 1476 nm
      s.gamma_fs_s = 0.315 / kGammaRefMHz;  // 5P3/2 -> 4D3/2, 1529 nm
      s.a42_sq = 0.5;
      s.a43_sq = 0.2;
      s.lambda_d = 1476.0;
      s.lambda_s = 1529.0;
      break;
  }
  return s;
}

GammaMatrix decoherence_rates(const AtomicScheme& scheme, double gamma_deph,
                              GammaConvention convention) {
  if (gamma_deph < 0.0) throw std::domain_error("decoherence_rates: gamma_deph must be >= 0");

  std::array<double, 4> width{};
  width[0] = 0.0;
  if (convention == GammaConvention::FineStructureWidths) {
    width[1] = scheme.gamma_fs_795;
    width[2] = scheme.gamma_fs_780;
    width[3] = scheme.gamma_fs_d + scheme.gamma_fs_s;
  } else {
    width[1] = scheme.decay_21();
    width[2] = scheme.decay_31();
    width[3] = scheme.decay_42() + scheme.decay_43();
  }

  GammaMatrix gm;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      gm.g[i][j] = (i == j) ? 0.0 : width[i] + width[j] + gamma_deph;
  return gm;
}

CouplingScales od_scalings(const AtomicScheme& scheme, double alpha,
                           std::optional<double> alpha_c_override,
                           std::optional<double> alpha_s_override) {
  if (alpha < 0.0) throw std::domain_error("od_scalings: alpha must be >= 0");
  CouplingScales cs;
  cs.alpha = alpha;
  const double rp = scheme.lambda_c / scheme.lambda_p;
  cs.alpha_c = alpha_c_override
                   ? *alpha_c_override
                   : alpha * (scheme.a31_sq / scheme.a21_sq) * rp * rp;
  const double rs = scheme.lambda_s / scheme.lambda_p;
  cs.alpha_s = alpha_s_override
                   ? *alpha_s_override
                   : alpha * (scheme.decay_43() / scheme.decay_21()) * rs * rs;
  return cs;
}

OperatingPoint make_point(Band band, double delta_p, double delta_c, double delta,
                          double omega_c0, double omega_d, double alpha, double gamma_deph,
                          GammaConvention convention) {
  OperatingPoint pt;
  pt.scheme = build_scheme(band);
  pt.gamma = decoherence_rates(pt.scheme, gamma_deph, convention);
  pt.delta_p = delta_p;
  pt.delta_c = delta_c;
  pt.delta = delta;
  pt.omega_c0 = omega_c0;
  pt.omega_d = omega_d;
  pt.alpha = alpha;
  return pt;
}

GroundManifoldState zeroth_order_steady_state(const AtomicScheme& scheme,
                                              const GammaMatrix& gamma, double delta_c,
                                              std::complex<double> omega_c) {
  const double G31 = scheme.decay_31();
  const double g31 = gamma.g31();
  if (!(G31 > 0.0) || !(g31 > 0.0))
    throw std::domain_error("zeroth_order_steady_state: needs decay_31 > 0 and gamma_31 > 0");

  const double u = std::norm(omega_c);
  const double elastic = G31 * (g31 * g31 + 4.0 * delta_c * delta_c);
  const double den = elastic + 2.0 * g31 * u;

  GroundManifoldState st;
  st.p11 = (elastic + g31 * u) / den;
  st.p33 = 1.0 - st.p11;
  st.c13 = std::complex<double>(0.0, 1.0) * G31 *
           std::complex<double>(g31, 2.0 * delta_c) * omega_c / den;
  return st;
}

}  // namespace qfc
