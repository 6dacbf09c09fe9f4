#include "qcpuc/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "qcpuc/errors.hpp"
#include "qcpuc/extended_real.hpp"

namespace qcpuc {

ExtendedReal ExtendedReal::finite(double value) {
  if (std::isnan(value)) throw DomainError("ExtendedReal: NaN value");
  if (std::isinf(value)) {
    if (value > 0) return infinity();
    throw DomainError("ExtendedReal: negative infinity");
  }
  if (value < -1e-12) {
    throw DomainError("ExtendedReal: negative value " + std::to_string(value));
  }
  return ExtendedReal(false, value < 0.0 ? 0.0 : value);
}

std::string format_value(double x, int digits) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string format_value(ExtendedReal x, int digits) {
  return x.is_infinite() ? "inf" : format_value(x.value(), digits);
}

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) {
  return os << format_value(x);
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
         eigenvectors.adjoint();
}

ComplexMatrix SpectralDecomposition::apply(
    const std::function<double(double)>& f) const {
  Eigen::VectorXcd fl(eigenvalues.size());
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) fl(i) = f(eigenvalues(i));
  return eigenvectors * fl.asDiagonal() * eigenvectors.adjoint();
}

double SpectralDecomposition::support_threshold() const {
  if (eigenvalues.size() == 0) return 0.0;
  return kSupportRelativeCutoff * std::max(eigenvalues(0), 0.0);
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  return 0.5 * (a + a.adjoint());
}

SpectralDecomposition spectral_decompose(const ComplexMatrix& h, double tol) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw ValidationError("spectral_decompose: matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double defect = hermiticity_defect(h);
  if (!(defect <= tol * scale)) {
    throw ValidationError("spectral_decompose: matrix is not Hermitian (defect " +
                          std::to_string(defect) + ")");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("spectral_decompose: eigensolver did not converge");
  }
  // Eigen returns ascending order.
  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

ComplexMatrix exp_anti_hermitian(const ComplexMatrix& generator) {
  // G = -iH with H = iG Hermitian, so exp(G) = V exp(-i Lambda) V^dagger.
  const ComplexMatrix h = Complex(0.0, 1.0) * generator;
  const SpectralDecomposition eig = spectral_decompose(h, 1e-9);
  Eigen::VectorXcd phases(eig.dim());
  for (int i = 0; i < eig.dim(); ++i) {
    phases(i) = std::exp(Complex(0.0, -eig.eigenvalues(i)));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace qcpuc
