#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace qcpuc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Default absolute tolerance for Hermiticity, trace and positivity checks.
inline constexpr double kStateTolerance = 1e-9;

/// Eigenvalues below this fraction of the largest one are treated as zero.
inline constexpr double kSupportRelativeCutoff = 1e-12;

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order
/// and eigenvectors as the matching orthonormal columns.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  ComplexMatrix eigenvectors;

  int dim() const { return static_cast<int>(eigenvalues.size()); }

  /// Sum of lambda_n |n><n|.
  ComplexMatrix reconstruct() const;

  /// V f(Lambda) V^dagger.
  ComplexMatrix apply(const std::function<double(double)>& f) const;

  /// Eigenvalues at or below this are outside the support.
  double support_threshold() const;
};

/// Largest entry of |A - A^dagger|.
double hermiticity_defect(const ComplexMatrix& a);

/// (A + A^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& a);

/// Tridiagonalization-based Hermitian eigensolver. Throws ValidationError if
/// the input is not square or deviates from Hermitian by more than
/// `tol * max(1, max|A_ij|)`.
SpectralDecomposition spectral_decompose(const ComplexMatrix& h,
                                         double tol = kStateTolerance);

/// exp(G) for anti-Hermitian G, computed from the spectrum of the Hermitian
/// matrix iG so the result is unitary to working precision.
ComplexMatrix exp_anti_hermitian(const ComplexMatrix& generator);

}  // namespace qcpuc
