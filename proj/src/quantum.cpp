#include "qcpuc/quantum.hpp"

#include <cmath>
#include <string>

#include "qcpuc/errors.hpp"

namespace qcpuc {
namespace {

void require_same_dim(const DensityMatrix& a, const DensityMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw ValidationError(std::string(what) + ": dimension mismatch (" +
                          std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) + ")");
  }
}

// sum over the support of p ln p, with 0 ln 0 = 0.
double neg_entropy(const SpectralDecomposition& eig) {
  const double cut = eig.support_threshold();
  double acc = 0.0;
  for (int i = 0; i < eig.dim(); ++i) {
    const double p = eig.eigenvalues(i);
    if (p > cut) acc += p * std::log(p);
  }
  return acc;
}

}  // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError("DensityMatrix: matrix must be square and non-empty");
  }
  const double defect = hermiticity_defect(m);
  if (!(defect <= tol)) {
    throw ValidationError("DensityMatrix: not Hermitian (defect " + std::to_string(defect) + ")");
  }
  matrix_ = hermitian_part(m);
  const double trace = matrix_.trace().real();
  if (!(std::abs(trace - 1.0) <= tol)) {
    throw ValidationError("DensityMatrix: trace " + std::to_string(trace) + " != 1");
  }
  spectrum_ = spectral_decompose(matrix_, tol);
  const double min_eig = spectrum_.eigenvalues(spectrum_.dim() - 1);
  if (min_eig < -tol) {
    throw ValidationError("DensityMatrix: not positive semidefinite (min eigenvalue " +
                          std::to_string(min_eig) + ")");
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw ValidationError("DensityMatrix::pure: zero vector");
  const ComplexVector u = psi / norm;
  return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::basis_state(int dim, int k) {
  if (k < 0 || k >= dim) throw ValidationError("DensityMatrix::basis_state: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim <= 0) throw ValidationError("DensityMatrix::maximally_mixed: dim must be positive");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::diagonal(const Eigen::VectorXd& populations) {
  return DensityMatrix(ComplexMatrix(populations.cast<Complex>().asDiagonal()));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return -neg_entropy(rho.spectrum());
}

double weight_outside_support(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "support_contained");
  const SpectralDecomposition& s = sigma.spectrum();
  const double cut = s.support_threshold();
  double weight = 0.0;
  for (int j = 0; j < s.dim(); ++j) {
    if (s.eigenvalues(j) > cut) continue;
    const ComplexVector v = s.eigenvectors.col(j);
    weight += (v.adjoint() * rho.matrix() * v)(0, 0).real();
  }
  return std::max(weight, 0.0);
}

bool support_contained(const DensityMatrix& rho, const DensityMatrix& sigma, double tol) {
  return weight_outside_support(rho, sigma) <= tol;
}

ExtendedReal relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma, "relative_entropy");
  if ((rho.matrix() - sigma.matrix()).cwiseAbs().maxCoeff() <= 1e-14) {
    return ExtendedReal::finite(0.0);
  }
  if (!support_contained(rho, sigma)) return ExtendedReal::infinity();

  const SpectralDecomposition& s = sigma.spectrum();
  const double cut = s.support_threshold();
  // -Tr(rho ln sigma) = -sum_j <b_j|rho|b_j> ln q_j over supp(sigma).
  const ComplexMatrix rotated = s.eigenvectors.adjoint() * rho.matrix() * s.eigenvectors;
  double cross = 0.0;
  for (int j = 0; j < s.dim(); ++j) {
    const double q = s.eigenvalues(j);
    if (q <= cut) continue;
    cross -= rotated(j, j).real() * std::log(q);
  }
  const double d = neg_entropy(rho.spectrum()) + cross;
  return ExtendedReal::finite(std::max(d, 0.0));
}

}  // namespace qcpuc
