#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qfc {

// Density matrix in the truncated Fock basis {|0>, ..., |nmax>}.
class DensityMatrix {
 public:
  explicit DensityMatrix(int nmax) : rho_(Eigen::MatrixXcd::Zero(nmax + 1, nmax + 1)) {}
  explicit DensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {}

  static DensityMatrix vacuum(int nmax);
  static DensityMatrix fock(int n, int nmax);
  static DensityMatrix coherent(std::complex<double> beta, int nmax);
  static DensityMatrix pure(const Eigen::VectorXcd& psi);

  int nmax() const { return static_cast<int>(rho_.rows()) - 1; }
  int dim() const { return static_cast<int>(rho_.rows()); }

  const Eigen::MatrixXcd& matrix() const { return rho_; }
  Eigen::MatrixXcd& matrix() { return rho_; }
  std::complex<double> operator()(int m, int n) const { return rho_(m, n); }

  double trace_real() const { return rho_.trace().real(); }
  double hermiticity_defect() const;  // max |rho - rho^dagger|
  double min_eigenvalue() const;      // of the Hermitian part

 private:
  Eigen::MatrixXcd rho_;
};

// annihilation operator on a dim-dimensional truncated space
Eigen::MatrixXcd lowering_operator(int dim);

// Fock amplitudes of |beta> up to nmax (no renormalization: the truncated
// vector keeps the exact coefficients, its norm deficit is the leakage)
Eigen::VectorXcd coherent_amplitudes(std::complex<double> beta, int nmax);

// sqrt(<psi|rho|psi>) for a pure reference state
double fidelity(const DensityMatrix& rho, const Eigen::VectorXcd& psi);

// exp(i theta n) rho exp(-i theta n)
DensityMatrix phase_rotate(const DensityMatrix& rho, double theta);

std::complex<double> mean_lowering(const DensityMatrix& rho);     // <a>
std::complex<double> mean_lowering_sq(const DensityMatrix& rho);  // <a^2>
double mean_number(const DensityMatrix& rho);                     // <a^dag a>

}  // namespace qfc
