#include "qfc/fock.hpp"

#include <cmath>

#include "qfc/errors.hpp"

namespace qfc {

DensityMatrix DensityMatrix::vacuum(int nmax) { return fock(0, nmax); }

DensityMatrix DensityMatrix::fock(int n, int nmax) {
  if (n < 0 || n > nmax) throw std::domain_error("DensityMatrix::fock: need 0 <= n <= nmax");
  DensityMatrix d(nmax);
  d.rho_(n, n) = 1.0;
  return d;
}

DensityMatrix DensityMatrix::coherent(std::complex<double> beta, int nmax) {
  return pure(coherent_amplitudes(beta, nmax));
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  return DensityMatrix(Eigen::MatrixXcd(psi * psi.adjoint()));
}

double DensityMatrix::hermiticity_defect() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const Eigen::MatrixXcd herm = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Eigen::MatrixXcd lowering_operator(int dim) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Eigen::VectorXcd coherent_amplitudes(std::complex<double> beta, int nmax) {
  Eigen::VectorXcd psi(nmax + 1);
  psi(0) = std::exp(-0.5 * std::norm(beta));
  for (int n = 1; n <= nmax; ++n) psi(n) = psi(n - 1) * beta / std::sqrt(double(n));
  return psi;
}

double fidelity(const DensityMatrix& rho, const Eigen::VectorXcd& psi) {
  if (psi.size() != rho.dim())
    throw std::domain_error("fidelity: reference state has a different truncation");
  const double p = (psi.adjoint() * rho.matrix() * psi)(0, 0).real();
  return std::sqrt(std::max(0.0, p));
}

DensityMatrix phase_rotate(const DensityMatrix& rho, double theta) {
  const int d = rho.dim();
  Eigen::MatrixXcd out(d, d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n)
      out(m, n) = rho(m, n) * std::polar(1.0, theta * (m - n));
  return DensityMatrix(std::move(out));
}

std::complex<double> mean_lowering(const DensityMatrix& rho) {
  const int d = rho.dim();
  std::complex<double> s = 0.0;
  // tr(a rho) = sum_n sqrt(n+1) rho(n+1, n)
  for (int n = 0; n + 1 < d; ++n) s += std::sqrt(double(n + 1)) * rho(n + 1, n);
  return s;
}

std::complex<double> mean_lowering_sq(const DensityMatrix& rho) {
  const int d = rho.dim();
  std::complex<double> s = 0.0;
  for (int n = 0; n + 2 < d; ++n)
    s += std::sqrt(double(n + 1)) * std::sqrt(double(n + 2)) * rho(n + 2, n);
  return s;
}

double mean_number(const DensityMatrix& rho) {
  double s = 0.0;
  for (int n = 0; n < rho.dim(); ++n) s += n * rho(n, n).real();
  return s;
}

}  // namespace qfc
