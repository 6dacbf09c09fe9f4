#pragma once

#include "qcpuc/extended_real.hpp"
#include "qcpuc/linalg.hpp"

namespace qcpuc {

/// Default bound on Tr(P_ker(sigma) rho) for rho to count as supported by sigma.
inline constexpr double kSupportWeightTolerance = 1e-10;

/// Validated finite-dimensional quantum state.
///
/// The constructor symmetrizes its input via (A + A^dagger)/2 after checking
/// Hermiticity, then checks unit trace and positivity against `tol`. The
/// spectrum is computed once on construction; instances are immutable.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& m, double tol = kStateTolerance);

  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix basis_state(int dim, int k);
  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix diagonal(const Eigen::VectorXd& populations);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const SpectralDecomposition& spectrum() const { return spectrum_; }

 private:
  ComplexMatrix matrix_;
  SpectralDecomposition spectrum_;
};

/// S(rho) = -sum p ln p in nats, over eigenvalues above the support cutoff.
double von_neumann_entropy(const DensityMatrix& rho);

/// Tr(P_ker(sigma) rho): weight of rho outside the numerical support of sigma.
double weight_outside_support(const DensityMatrix& rho, const DensityMatrix& sigma);

/// True iff Tr(P_ker(sigma) rho) <= tol.
bool support_contained(const DensityMatrix& rho, const DensityMatrix& sigma,
                       double tol = kSupportWeightTolerance);

/// D(rho || sigma) = Tr(rho ln rho - rho ln sigma), evaluated in sigma's
/// eigenbasis. +inf exactly when support_contained(rho, sigma) is false.
ExtendedReal relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace qcpuc
