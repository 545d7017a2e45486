#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "qfc/coupling.hpp"
#include "qfc/lambert.hpp"

using namespace qfc;
using qfc_test::cd;

namespace {

CouplingProfile make_profile(double delta_c, double omega_c0, double alpha_c) {
  const AtomicScheme s = build_scheme(Band::E1367);
  return CouplingProfile(s, decoherence_rates(s), delta_c, omega_c0, alpha_c);
}

}  // namespace

TEST_CASE("zero absorption or zero field give a constant profile") {
  const CouplingProfile flat = make_profile(-31.0, 50.0, 0.0);
  for (double z : {0.0, 0.3, 1.0}) {
    CHECK(flat.omega_c(z) == cd(50.0, 0.0));
    CHECK(flat.u(z) == 2500.0);
  }
  const CouplingProfile dark = make_profile(-31.0, 0.0, 120.0);
  CHECK(dark.omega_c(0.7) == cd(0.0, 0.0));
}

TEST_CASE("entry boundary and monotone attenuation") {
  const CouplingProfile p = make_profile(-31.0, 50.0, 96.3);
  CHECK(p.u(0.0) == doctest::Approx(2500.0).epsilon(1e-12));
  double prev = p.u(0.0);
  for (int k = 1; k <= 64; ++k) {
    const double uk = p.u(k / 64.0);
    CHECK(uk <= prev * (1.0 + 1e-12));
    prev = uk;
  }
  CHECK(p.u(1.0) < 2500.0);
}

TEST_CASE("intensity matches the squared field everywhere") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const CouplingProfile p = make_profile((2.0 * u01(rng) - 1.0) * 100.0,
                                           1.0 + 200.0 * u01(rng), 2000.0 * u01(rng));
    for (int i = 0; i <= 16; ++i) {
      const double z = i / 16.0;
      CHECK(std::norm(p.omega_c(z)) == doctest::Approx(p.u(z)).epsilon(1e-10));
    }
  }
}

TEST_CASE("implicit attenuation relation holds pointwise") {
  // (B0/A0) u exp((B0/A0) u) must equal its entry value damped by exp(D0 z / A0)
  const CouplingProfile p = make_profile(-31.0, 50.0, 96.3);
  const double q = p.b0() / p.a0();
  const double lhs0 = q * p.u(0.0) * std::exp(q * p.u(0.0));
  for (int i = 0; i <= 32; ++i) {
    const double z = i / 32.0;
    const double lhs = q * p.u(z) * std::exp(q * p.u(z));
    CHECK(lhs == doctest::Approx(lhs0 * std::exp(p.d0() * z / p.a0())).epsilon(1e-10));
  }
}

TEST_CASE("closed form tracks a fourth-order integration of the attenuation ODE") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double dc = (2.0 * u01(rng) - 1.0) * 80.0;
    const double oc0 = 2.0 + 150.0 * u01(rng);
    const double ac = 1500.0 * u01(rng);
    const CouplingProfile p = make_profile(dc, oc0, ac);

    const auto rhs = [&](double, cd w) { return p.c0() * w / (p.a0() + p.b0() * std::norm(w)); };
    for (int i = 1; i <= 64; ++i) {
      const double z = i / 64.0;
      const cd numeric = qfc_test::rk4_integrate(rhs, cd(oc0, 0.0), 0.0, z, 2048);
      CHECK(std::abs(p.omega_c(z) - numeric) <= 1e-8 * std::abs(numeric));
    }
  }
}

TEST_CASE("grid sampler covers [0,1] inclusively and validates its size") {
  OperatingPoint pt = make_point(Band::E1367, 13, -31, 14, 50, 7, 50);
  const CouplingProfileGrid g = coupling_profile_grid(pt, 65);
  CHECK(g.zeta.size() == 65);
  CHECK(g.zeta.front() == 0.0);
  CHECK(g.zeta.back() == 1.0);
  CHECK(g.u.front() == doctest::Approx(2500.0));
  CHECK_THROWS_AS(coupling_profile_grid(pt, 1), std::domain_error);
}

TEST_CASE("deep-attenuation arguments stay finite through the log-domain branch") {
  // large intensity with a huge exponent: the naive W argument overflows
  const CouplingProfile p = make_profile(-5.0, 50.0, 1541.0);
  CHECK(std::isfinite(p.u(1.0)));
  CHECK(p.u(1.0) < p.u(0.0));
  const CouplingProfile hot = make_profile(0.0, 900.0, 5000.0);
  for (double z : {0.25, 0.5, 1.0}) CHECK(std::isfinite(hot.u(z)));
}
