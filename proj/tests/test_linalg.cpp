#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "qcpuc/errors.hpp"
#include "qcpuc/linalg.hpp"
#include "qcpuc/random.hpp"

using namespace qcpuc;

namespace {

ComplexMatrix random_hermitian(int dim, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(n(rng), n(rng));
  return hermitian_part(a);
}

}  // namespace

TEST(SpectralDecompose, DiagonalInputIsSortedDescending) {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(0, 0) = 3;
  h(1, 1) = 1;
  h(2, 2) = 2;
  const SpectralDecomposition s = spectral_decompose(h);
  EXPECT_NEAR(s.eigenvalues(0), 3.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues(1), 2.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues(2), 1.0, 1e-14);
  // Eigenvectors are permuted standard basis vectors.
  EXPECT_NEAR(std::abs(s.eigenvectors(0, 0)), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(s.eigenvectors(2, 1)), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(s.eigenvectors(1, 2)), 1.0, 1e-14);
}

TEST(SpectralDecompose, PauliX) {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const SpectralDecomposition s = spectral_decompose(x);
  EXPECT_NEAR(s.eigenvalues(0), 1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues(1), -1.0, 1e-14);
}

TEST(SpectralDecompose, RandomReconstructionAndOrthonormality) {
  Rng rng(11);
  for (int dim = 1; dim <= 16; ++dim) {
    for (int rep = 0; rep < 5; ++rep) {
      const ComplexMatrix h = random_hermitian(dim, rng);
      const SpectralDecomposition s = spectral_decompose(h);
      EXPECT_LE((s.reconstruct() - h).cwiseAbs().maxCoeff(), 1e-10);
      const ComplexMatrix gram = s.eigenvectors.adjoint() * s.eigenvectors;
      EXPECT_LE((gram - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff(), 1e-10);
      for (int i = 1; i < dim; ++i) EXPECT_GE(s.eigenvalues(i - 1), s.eigenvalues(i));
    }
  }
}

TEST(SpectralDecompose, RejectsNonHermitian) {
  ComplexMatrix a(2, 2);
  a << 0, 1, 0, 0;
  EXPECT_THROW(spectral_decompose(a), ValidationError);
  EXPECT_THROW(spectral_decompose(ComplexMatrix::Zero(2, 3)), ValidationError);
}

TEST(SpectralDecompose, ApplyMatchesFunctionOfDiagonal) {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 0) = 4.0;
  h(1, 1) = 0.25;
  const ComplexMatrix r = spectral_decompose(h).apply([](double v) { return std::sqrt(v); });
  EXPECT_NEAR(r(0, 0).real(), 2.0, 1e-14);
  EXPECT_NEAR(r(1, 1).real(), 0.5, 1e-14);
}

TEST(ExpAntiHermitian, IsUnitaryAndMatchesRotation) {
  // exp(-i theta sigma_y) is a real rotation.
  const double theta = 0.37;
  ComplexMatrix g(2, 2);
  g << 0, -theta, theta, 0;
  const ComplexMatrix u = exp_anti_hermitian(g);
  EXPECT_NEAR(u(0, 0).real(), std::cos(theta), 1e-14);
  EXPECT_NEAR(u(1, 0).real(), std::sin(theta), 1e-14);
  EXPECT_NEAR(u(0, 1).real(), -std::sin(theta), 1e-14);

  Rng rng(3);
  const ComplexMatrix h = random_hermitian(6, rng);
  const ComplexMatrix v = exp_anti_hermitian(Complex(0, 1) * h);
  EXPECT_LE((v.adjoint() * v - ComplexMatrix::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(ExtendedReal, FiniteAndInfiniteBranches) {
  EXPECT_TRUE(ExtendedReal::infinity().is_infinite());
  EXPECT_EQ(ExtendedReal::infinity().value(), std::numeric_limits<double>::infinity());
  EXPECT_EQ(ExtendedReal::finite(-1e-13).value(), 0.0);
  EXPECT_THROW(ExtendedReal::finite(-1e-6), DomainError);
  EXPECT_EQ(ExtendedReal::finite(2.0), ExtendedReal::finite(2.0));
  EXPECT_FALSE(ExtendedReal::finite(0.0) == ExtendedReal::infinity());
}

TEST(ExtendedReal, Formatting) {
  EXPECT_EQ(format_value(ExtendedReal::infinity()), "inf");
  EXPECT_EQ(format_value(ExtendedReal::finite(0.9 * std::log(11.0))), "2.15810575");
  EXPECT_EQ(format_value(1e-6), "1e-06");
  EXPECT_EQ(format_value(0.0), "0");
  std::ostringstream os;
  os << ExtendedReal::infinity();
  EXPECT_EQ(os.str(), "inf");
}
