#include "qcpuc/random.hpp"

#include <Eigen/QR>

#include "qcpuc/errors.hpp"

namespace qcpuc {
namespace {

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  return g;
}

// Orthonormal columns from QR with the R-diagonal phases removed.
ComplexMatrix haar_isometry(int rows, int cols, Rng& rng) {
  const ComplexMatrix g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  const ComplexMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (int j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

ComplexMatrix random_unitary(int dim, Rng& rng) { return haar_isometry(dim, dim, rng); }

DensityMatrix random_density_matrix(int dim, Rng& rng, int rank) {
  if (rank < 0) rank = dim;
  if (rank < 1 || rank > dim) throw ValidationError("random_density_matrix: bad rank");
  const ComplexMatrix g = ginibre(dim, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(hermitian_part(rho));
}

KrausChannel random_channel(int dim_in, int dim_out, int n_kraus, Rng& rng) {
  if (n_kraus < 1) throw ValidationError("random_channel: need at least one Kraus operator");
  if (dim_out * n_kraus < dim_in) {
    throw ValidationError("random_channel: dim_out * n_kraus must be >= dim_in");
  }
  const ComplexMatrix v = haar_isometry(dim_out * n_kraus, dim_in, rng);
  std::vector<ComplexMatrix> ops;
  for (int k = 0; k < n_kraus; ++k) ops.push_back(v.middleRows(k * dim_out, dim_out));
  return KrausChannel(std::move(ops));
}

}  // namespace qcpuc
