#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "qfc/qubit.hpp"

using namespace qfc;
using qfc_test::cd;

namespace {

Eigen::Matrix2cd random_qubit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix2cd h;
  h << cd(g(rng), g(rng)), cd(g(rng), g(rng)), cd(g(rng), g(rng)), cd(g(rng), g(rng));
  Eigen::Matrix2cd rho = h * h.adjoint();
  rho /= rho.trace();
  return rho;
}

Eigen::Vector4cd bell_phi_plus() {
  Eigen::Vector4cd v;
  v << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace

TEST_CASE("single-rail map: identity at unit efficiency, documented half case") {
  std::mt19937_64 rng(10);
  const Eigen::Matrix2cd rho = random_qubit(rng);
  const QubitChannelResult id = single_rail_channel(rho, ChannelCoeff::from_eta(1.0));
  CHECK((id.rho - rho).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(id.leakage == 0.0);

  Eigen::Matrix2cd plus;
  plus << 0.5, 0.5, 0.5, 0.5;
  const QubitChannelResult r = single_rail_channel(plus, ChannelCoeff::from_eta(0.64));
  CHECK(r.rho(0, 1).real() == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(r.rho(1, 1).real() == doctest::Approx(0.32).epsilon(1e-14));
  CHECK(r.rho(0, 0).real() == doctest::Approx(0.68).epsilon(1e-14));
}

TEST_CASE("single-rail map is the two-level block of the photon-number channel") {
  std::mt19937_64 rng(20);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Matrix2cd rho = random_qubit(rng);
    const ChannelCoeff c{std::polar(std::sqrt(0.37), 2.1), k % 2 == 0};
    const QubitChannelResult fast = single_rail_channel(rho, c);
    const DensityMatrix full = convert_state(DensityMatrix(Eigen::MatrixXcd(rho)), c);
    CHECK((fast.rho - full.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("path map keeps a maximally entangled state at unit efficiencies") {
  Eigen::Matrix2cd psi_plus;
  psi_plus << 0.5, 0.5, 0.5, 0.5;  // logical |+><+| = dual-rail Psi+
  const TwoModeState out =
      path_channel(psi_plus, ChannelCoeff::from_eta(1.0), ChannelCoeff::from_eta(1.0));
  CHECK(out.vacuum_population() == 0.0);
  CHECK((out.logical_block() - psi_plus).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("path map: asymmetric efficiencies, documented values") {
  Eigen::Matrix2cd psi_plus;
  psi_plus << 0.5, 0.5, 0.5, 0.5;
  const TwoModeState out =
      path_channel(psi_plus, ChannelCoeff::from_eta(1.0), ChannelCoeff::from_eta(0.25));
  CHECK(out.logical_block()(0, 1).real() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(out.logical_block()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(out.logical_block()(1, 1).real() == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(out.vacuum_population() == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(out.rho.trace().real() == doctest::Approx(1.0).epsilon(1e-14));

  const TwoModeState dark =
      path_channel(psi_plus, ChannelCoeff::from_eta(0.0), ChannelCoeff::from_eta(0.0));
  CHECK(dark.vacuum_population() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("path map agrees with two independent single-mode channels") {
  std::mt19937_64 rng(30);
  for (int k = 0; k < 50; ++k) {
    const Eigen::Matrix2cd rho = random_qubit(rng);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const cd ca = std::polar(std::sqrt(u01(rng)), 6.28 * u01(rng));
    const cd cb = std::polar(std::sqrt(u01(rng)), 6.28 * u01(rng));

    const TwoModeState out = path_channel(rho, ChannelCoeff{ca, false}, ChannelCoeff{cb, false});

    // embed |1_D 0_U>, |0_D 1_U> into the two-mode space and convert each
    // mode with its own Kraus pair
    Eigen::Matrix4cd big = Eigen::Matrix4cd::Zero();
    big(2, 2) = rho(0, 0);
    big(2, 1) = rho(0, 1);
    big(1, 2) = rho(1, 0);
    big(1, 1) = rho(1, 1);
    Eigen::MatrixXcd work = big;
    work = qfc_test::apply_qubit_loss_kraus(work, 2, 0, ca);
    work = qfc_test::apply_qubit_loss_kraus(work, 2, 1, cb);
    CHECK((out.rho - work).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("polarization map: structural identity with the path logical block") {
  std::mt19937_64 rng(40);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Matrix2cd rho = random_qubit(rng);
    const ChannelCoeff cdn = ChannelCoeff::from_eta(u01(rng));
    const ChannelCoeff cup = ChannelCoeff::from_eta(u01(rng));
    const QubitChannelResult pol = polarization_channel(rho, cdn, cup);
    const TwoModeState path = path_channel(rho, cdn, cup);
    CHECK((pol.rho - path.logical_block()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(pol.leakage == doctest::Approx(path.vacuum_population()).epsilon(1e-12));
  }
}

TEST_CASE("polarization map: diagonal input stays diagonal, equal CEs rescale") {
  Eigen::Matrix2cd h = Eigen::Matrix2cd::Zero();
  h(0, 0) = 1.0;  // |H><H|
  const QubitChannelResult r =
      polarization_channel(h, ChannelCoeff::from_eta(0.7), ChannelCoeff::from_eta(0.2));
  CHECK(r.rho(0, 0).real() == doctest::Approx(0.7));
  CHECK(std::abs(r.rho(0, 1)) + std::abs(r.rho(1, 1)) <= 1e-15);

  std::mt19937_64 rng(50);
  const Eigen::Matrix2cd rho = random_qubit(rng);
  const QubitChannelResult eq =
      polarization_channel(rho, ChannelCoeff::from_eta(0.6), ChannelCoeff::from_eta(0.6));
  const Eigen::Matrix2cd renorm = eq.rho / eq.rho.trace();
  CHECK((renorm - rho).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("uncorrected polarization keeps the splitter phases") {
  Eigen::Matrix2cd plus;
  plus << 0.5, 0.5, 0.5, 0.5;
  const QubitChannelResult r =
      polarization_channel(plus, ChannelCoeff::from_eta(1.0, false),
                           ChannelCoeff::from_eta(1.0, false));
  CHECK(std::abs(r.rho(0, 1) - cd(0.0, -0.5)) <= 1e-15);
  CHECK(std::abs(r.rho(1, 0) - cd(0.0, 0.5)) <= 1e-15);
}

TEST_CASE("one-qubit product channel reduces to the single-rail map") {
  std::mt19937_64 rng(60);
  const Eigen::Matrix2cd rho = random_qubit(rng);
  const ChannelCoeff c{std::polar(std::sqrt(0.44), 0.9), false};
  NQubitState in;
  in.rho = rho;
  in.n_qubits = 1;
  const NQubitState out = n_qubit_channel(in, {c});
  const QubitChannelResult ref = single_rail_channel(rho, c);
  CHECK((out.rho - ref.rho).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("product channel equals per-mode Kraus composition") {
  std::mt19937_64 rng(70);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int n : {2, 3}) {
    const int dim = 1 << n;
    std::normal_distribution<double> g;
    Eigen::MatrixXcd h(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) h(i, j) = cd(g(rng), g(rng));
    Eigen::MatrixXcd rho = h * h.adjoint();
    rho /= rho.trace();

    std::vector<ChannelCoeff> coeffs;
    Eigen::MatrixXcd ref = rho;
    for (int j = 0; j < n; ++j) {
      const cd c = std::polar(std::sqrt(u01(rng)), 6.28 * u01(rng));
      coeffs.push_back(ChannelCoeff{c, false});
      ref = qfc_test::apply_qubit_loss_kraus(ref, n, j, c);
    }
    NQubitState in;
    in.rho = rho;
    in.n_qubits = n;
    const NQubitState out = n_qubit_channel(in, coeffs);
    CHECK((out.rho - ref).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("three-qubit GHZ: documented corner elements") {
  Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(8);
  ghz(0) = ghz(7) = 1.0 / std::sqrt(2.0);
  NQubitState in = NQubitState::from_pure(ghz);
  const std::vector<ChannelCoeff> cs(3, ChannelCoeff::from_eta(0.8));
  const NQubitState out = n_qubit_channel(in, cs);
  CHECK(out.rho(0, 7).real() == doctest::Approx(0.5 * std::pow(0.8, 1.5)).epsilon(1e-12));
  CHECK(out.rho(7, 7).real() == doctest::Approx(0.5 * std::pow(0.8, 3)).epsilon(1e-12));
  CHECK(out.rho(0, 0).real() ==
        doctest::Approx(0.5 + 0.5 * std::pow(0.2, 3)).epsilon(1e-12));
}

TEST_CASE("product channel is multiplicative over tensor factors") {
  std::mt19937_64 rng(80);
  const Eigen::Matrix2cd r1 = random_qubit(rng);
  const Eigen::Matrix2cd r2 = random_qubit(rng);
  Eigen::Matrix4cd joint = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) joint.block<2, 2>(2 * i, 2 * j) = r1(i, j) * r2;

  const ChannelCoeff c1 = ChannelCoeff::from_eta(0.5);
  const ChannelCoeff c2{std::polar(std::sqrt(0.8), 1.1), false};
  NQubitState in;
  in.rho = joint;
  in.n_qubits = 2;
  const NQubitState out = n_qubit_channel(in, {c1, c2});

  NQubitState a;
  a.rho = r1;
  a.n_qubits = 1;
  NQubitState b;
  b.rho = r2;
  b.n_qubits = 1;
  const Eigen::MatrixXcd ta = n_qubit_channel(a, {c1}).rho;
  const Eigen::MatrixXcd tb = n_qubit_channel(b, {c2}).rho;
  Eigen::Matrix4cd prod = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) prod.block<2, 2>(2 * i, 2 * j) = ta(i, j) * tb;
  CHECK((out.rho - prod).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("channel outputs stay positive with unit trace") {
  std::mt19937_64 rng(90);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int k = 0; k < 30; ++k) {
    const int n = 2 + static_cast<int>(3.0 * u01(rng));
    const int dim = 1 << n;
    std::normal_distribution<double> g;
    Eigen::MatrixXcd h(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) h(i, j) = cd(g(rng), g(rng));
    Eigen::MatrixXcd rho = h * h.adjoint();
    rho /= rho.trace();
    NQubitState in;
    in.rho = rho;
    in.n_qubits = n;
    std::vector<ChannelCoeff> cs;
    for (int j = 0; j < n; ++j) cs.push_back(ChannelCoeff::from_eta(u01(rng)));
    const NQubitState out = n_qubit_channel(in, cs);
    CHECK(std::abs(out.rho.trace().real() - 1.0) <= 1e-9);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(out.rho);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("dual-rail embedding matches the closed-form pair conversion") {
  // Phi+ through four converters, then post-selection on one photon per side
  const double ea1 = 0.9, ea2 = 0.72, eb1 = 0.5, eb2 = 0.32;
  const EprResult closed = epr_postselect(ea1, ea2, eb1, eb2);

  Eigen::Matrix4cd phi = bell_phi_plus() * bell_phi_plus().adjoint();
  const DualRailResult wide = dual_rail_n_qubit_channel(
      phi, {ChannelCoeff::from_eta(ea1), ChannelCoeff::from_eta(ea2)},
      {ChannelCoeff::from_eta(eb1), ChannelCoeff::from_eta(eb2)});
  Eigen::Matrix4cd post = wide.rho_logical;
  post /= post.trace();
  CHECK((post - closed.rho_post).cwiseAbs().maxCoeff() <= 1e-12);
  // coincidence probability equals the retained code-space weight
  CHECK(wide.rho_logical.trace().real() ==
        doctest::Approx(closed.coincidence_probability).epsilon(1e-12));
}

TEST_CASE("pair conversion: perfect and symmetric cases") {
  const EprResult perfect = epr_postselect(1, 1, 1, 1);
  CHECK(perfect.fidelity == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(perfect.coincidence_probability == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(perfect.bell_s == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));

  for (double eta : {0.3, 0.618, 0.9}) {
    const EprResult r = epr_postselect(eta, eta, eta, eta);
    CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.coincidence_probability == doctest::Approx(eta * eta).epsilon(1e-14));
  }
  CHECK_THROWS_AS(epr_postselect(0, 0, 0, 0), std::domain_error);
}

TEST_CASE("pair conversion: documented asymmetric case, two routes for S") {
  const EprResult r = epr_postselect(0.9, 0.9, 0.4, 0.4);
  CHECK(r.eta_bar_a == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(r.eta_bar_b == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(r.fidelity == doctest::Approx(1.3 / std::sqrt(2.0 * 0.97)).epsilon(1e-12));
  CHECK(r.coincidence_probability == doctest::Approx(0.485).epsilon(1e-15));
  CHECK(r.bell_s == doctest::Approx(2.0 * std::sqrt(2.0) * r.fidelity * r.fidelity)
                        .epsilon(1e-12));
  // the explicit observable route must reproduce the closed form
  CHECK(chsh_value(r.rho_post) == doctest::Approx(r.bell_s).epsilon(1e-9));
}

TEST_CASE("bell value identity S = 2 sqrt(2) F^2 across the efficiency grid") {
  for (double ea = 0.05; ea <= 1.0; ea += 0.05) {
    for (double eb = 0.05; eb <= 1.0; eb += 0.05) {
      const EprResult r = epr_postselect(ea, ea, eb, eb);
      CHECK(std::abs(r.bell_s - 2.0 * std::sqrt(2.0) * r.fidelity * r.fidelity) <= 1e-9);
      CHECK(std::abs(chsh_value(r.rho_post) - r.bell_s) <= 1e-9);
      CHECK(r.bell_s <= 2.0 * std::sqrt(2.0) + 1e-12);
    }
  }
}

TEST_CASE("maximal violation for the reference Bell state") {
  const Eigen::Matrix4cd phi = bell_phi_plus() * bell_phi_plus().adjoint();
  CHECK(chsh_value(phi) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("threshold fidelity gives S = 2 and the documented Bell-basis form") {
  // pick efficiencies whose post-selected fidelity is exactly 2^(-1/4):
  // F^2 = 1/sqrt(2) with x = eta_b/eta_a solving (1+x)^2/(2(1+x^2)) = 1/sqrt(2)
  const double target = 1.0 / std::sqrt(2.0);
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double x = 0.5 * (lo + hi);
    const double f2 = (1.0 + x) * (1.0 + x) / (2.0 * (1.0 + x * x));
    (f2 < target ? lo : hi) = x;
  }
  const double x = 0.5 * (lo + hi);
  const EprResult r = epr_postselect(1.0, 1.0, x * x, 1.0);  // eta_bar_b = x
  CHECK(r.fidelity == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-9));
  CHECK(r.bell_s == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(chsh_value(r.rho_post) == doctest::Approx(2.0).epsilon(1e-8));

  // Bell-basis matrix elements: {F^2, 1 - F^2, +-F sqrt(1-F^2)}
  Eigen::Vector4cd phi_p = bell_phi_plus();
  Eigen::Vector4cd phi_m;
  phi_m << 1.0 / std::sqrt(2.0), 0, 0, -1.0 / std::sqrt(2.0);
  const double pp = (phi_p.adjoint() * r.rho_post * phi_p)(0).real();
  const double mm = (phi_m.adjoint() * r.rho_post * phi_m)(0).real();
  const double pm = (phi_p.adjoint() * r.rho_post * phi_m)(0).real();
  CHECK(pp == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));          // 0.707
  CHECK(mm == doctest::Approx(1.0 - std::sqrt(0.5)).epsilon(1e-9));    // 0.293
  CHECK(std::abs(pm) ==
        doctest::Approx(std::sqrt(std::sqrt(0.5) * (1.0 - std::sqrt(0.5)))).epsilon(1e-7));
  // branch sign: eta_bar_b < eta_bar_a here, so the cross term is negative
  CHECK(r.branch == -1);
  CHECK(pm < 0.0);
}
