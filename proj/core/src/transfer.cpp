#include "qfc/transfer.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "qfc/errors.hpp"
#include "qfc/expm2.hpp"

namespace qfc {

namespace {

using Eigen::Matrix2cd;

Matrix2cd commutator(const Matrix2cd& x, const Matrix2cd& y) {
  return x * y - y * x;
}

// ordered midpoint product of slice exponentials
Matrix2cd sliced_product(const ModeMatrixEvaluator& eval, const CouplingProfile& prof,
                         int slices) {
  const double h = 1.0 / slices;
  Matrix2cd p = Matrix2cd::Identity();
  for (int k = 0; k < slices; ++k) {
    const double z = (k + 0.5) * h;
    const Matrix2cd m = eval.closed_form(prof.omega_c(z));
    p = expm2(m * h) * p;
  }
  return p;
}

Matrix2cd exact_sliced(const ModeMatrixEvaluator& eval, const CouplingProfile& prof,
                       const PropagationControls& c, int& slices_out, double& err_out) {
  int n = c.initial_slices;
  Matrix2cd coarse = sliced_product(eval, prof, n);
  while (true) {
    const Matrix2cd fine = sliced_product(eval, prof, 2 * n);
    // midpoint slicing is second order; one Richardson step
    const double err = (fine - coarse).cwiseAbs().maxCoeff() / 3.0;
    if (err <= c.tol) {
      slices_out = 2 * n;
      err_out = err;
      return (4.0 * fine - coarse) / 3.0;
    }
    n *= 2;
    if (2 * n > c.max_slices) {
      std::ostringstream os;
      os << "transfer_matrix: exact-sliced refinement stalled at " << 2 * n
         << " slices, achieved tolerance " << err << " (requested " << c.tol << ")";
      throw NumericalError(os.str());
    }
    coarse = fine;
  }
}

// Magnus terms by composite Simpson on a uniform grid.  The running integral
// S(z) is accumulated per subinterval with midpoint Simpson, so both the
// first term and the ordered double integral converge at fourth order.
Matrix2cd magnus(const ModeMatrixEvaluator& eval, const CouplingProfile& prof, int order,
                 int intervals) {
  const int n = intervals % 2 == 0 ? intervals : intervals + 1;
  const double h = 1.0 / n;

  std::vector<Matrix2cd> m_node(n + 1), s_node(n + 1);
  for (int k = 0; k <= n; ++k) m_node[k] = eval.closed_form(prof.omega_c(k * h));

  s_node[0].setZero();
  for (int k = 1; k <= n; ++k) {
    const Matrix2cd mid = eval.closed_form(prof.omega_c((k - 0.5) * h));
    s_node[k] = s_node[k - 1] + (h / 6.0) * (m_node[k - 1] + 4.0 * mid + m_node[k]);
  }
  const Matrix2cd omega1 = s_node[n];
  if (order == 1) return expm2(omega1);

  Matrix2cd omega2 = Matrix2cd::Zero();
  for (int k = 0; k <= n; ++k) {
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    omega2 += (w * h / 3.0) * commutator(m_node[k], s_node[k]);
  }
  omega2 *= 0.5;
  return expm2(omega1 + omega2);
}

TransferMatrix propagate(const OperatingPoint& pt, PropagationMethod method,
                         const PropagationControls& controls, bool absorbing) {
  if (pt.alpha < 0.0) throw std::domain_error("transfer_matrix: alpha must be >= 0");
  if (pt.omega_c0 < 0.0 || pt.omega_d < 0.0)
    throw std::domain_error("transfer_matrix: Rabi magnitudes must be >= 0");

  TransferMatrix t;
  t.method = method;
  if (pt.alpha == 0.0) {
    t.m = Matrix2cd::Identity();
    return t;
  }

  const ModeMatrixEvaluator eval(pt);
  const double alpha_c = absorbing ? pt.scales().alpha_c : 0.0;
  const CouplingProfile prof(pt.scheme, pt.gamma, pt.delta_c, pt.omega_c0, alpha_c);

  switch (method) {
    case PropagationMethod::ExactSliced:
      t.m = exact_sliced(eval, prof, controls, t.slices, t.refinement_error);
      break;
    case PropagationMethod::Magnus1:
      t.m = magnus(eval, prof, 1, controls.magnus_intervals);
      t.slices = controls.magnus_intervals;
      break;
    case PropagationMethod::Magnus2:
      t.m = magnus(eval, prof, 2, controls.magnus_intervals);
      t.slices = controls.magnus_intervals;
      break;
  }
  return t;
}

}  // namespace

PropagationMethod parse_method(const std::string& tag) {
  if (tag == "exact-sliced" || tag == "exact") return PropagationMethod::ExactSliced;
  if (tag == "magnus1") return PropagationMethod::Magnus1;
  if (tag == "magnus2") return PropagationMethod::Magnus2;
  throw ConfigError("unknown propagation method '" + tag +
                    "' (expected exact-sliced, magnus1 or magnus2)");
}

std::string method_name(PropagationMethod m) {
  switch (m) {
    case PropagationMethod::ExactSliced: return "exact-sliced";
    case PropagationMethod::Magnus1: return "magnus1";
    case PropagationMethod::Magnus2: return "magnus2";
  }
  return "?";
}

TransferMatrix transfer_matrix(const OperatingPoint& pt, PropagationMethod method,
                               const PropagationControls& controls) {
  return propagate(pt, method, controls, true);
}

TransferMatrix nonabsorbing_transfer(const OperatingPoint& pt, PropagationMethod method,
                                     const PropagationControls& controls) {
  return propagate(pt, method, controls, false);
}

ConversionMetrics conversion_metrics(const TransferMatrix& t) {
  ConversionMetrics m;
  m.T_d = std::norm(t.A());
  m.eta_d = std::norm(t.C());
  m.T_u = std::norm(t.D());
  m.eta_u = std::norm(t.B());
  return m;
}

double conversion_efficiency(const OperatingPoint& pt, PropagationMethod method,
                             const PropagationControls& controls) {
  return conversion_metrics(transfer_matrix(pt, method, controls)).eta_d;
}

}  // namespace qfc
