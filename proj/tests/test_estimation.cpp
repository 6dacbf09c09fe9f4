#include <gtest/gtest.h>

#include <cmath>

#include "qcpuc/errors.hpp"
#include "qcpuc/estimation.hpp"
#include "qcpuc/fock.hpp"
#include "qcpuc/gaussian.hpp"
#include "qcpuc/random.hpp"

using namespace qcpuc;

namespace {

ParamStateFamily constant_family(const DensityMatrix& rho) {
  const ComplexMatrix m = rho.matrix();
  return ParamStateFamily("constant", rho.dim(), ParameterBox{{-1.0}, {1.0}},
                          [m](std::span<const double>) { return DensityMatrix(m); },
                          std::vector<double>{0.0});
}

Eigen::Vector3d random_vector(Rng& rng, double radius) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::Vector3d v(n(rng), n(rng), n(rng));
  return v.normalized() * radius * std::cbrt(u(rng));
}

ParamStateFamily random_qubit_family(Rng& rng) {
  return bloch_curve_family(random_vector(rng, 0.6), random_vector(rng, 1.0),
                            random_vector(rng, 1.0), 0.05);
}

// Eigenvector-derivative expression of J, with p' and |k'> from central
// differences of phase-aligned eigenvectors. Requires a non-degenerate spectrum.
double eigenvector_derivative_reqfi(const ParamStateFamily& f, double x0, double h) {
  const SpectralDecomposition s0 = f.at(x0).spectrum();
  const SpectralDecomposition sp = f.at(x0 + h).spectrum();
  const SpectralDecomposition sm = f.at(x0 - h).spectrum();
  const int d = s0.dim();
  auto aligned = [&](const SpectralDecomposition& s, int k) {
    ComplexVector v = s.eigenvectors.col(k);
    const Complex overlap = s0.eigenvectors.col(k).dot(v);
    return ComplexVector(v * std::conj(overlap / std::abs(overlap)));
  };
  double j = 0.0;
  for (int k = 0; k < d; ++k) {
    const double p = s0.eigenvalues(k);
    const double dp = (sp.eigenvalues(k) - sm.eigenvalues(k)) / (2 * h);
    j += dp * dp / p;
    const ComplexVector dk = (aligned(sp, k) - aligned(sm, k)) / (2 * h);
    for (int n = 0; n < d; ++n) {
      if (n == k) continue;
      const double pn = s0.eigenvalues(n);
      j += 2 * (pn - p) * std::norm(s0.eigenvectors.col(n).dot(dk)) * std::log(pn);
    }
  }
  return j;
}

}  // namespace

TEST(LogMeanInverse, ContinuousAcrossEqualArguments) {
  EXPECT_NEAR(log_mean_inverse(0.3, 0.3), 1 / 0.3, 1e-14);
  EXPECT_NEAR(log_mean_inverse(0.3, 0.3 * (1 + 1e-6)), 1 / (0.3 * (1 + 5e-7)), 1e-9);
  EXPECT_NEAR(log_mean_inverse(0.5, 0.1), std::log(5.0) / 0.4, 1e-14);
}

TEST(Fisher, ConstantFamilyIsZero) {
  Rng rng(1);
  const FisherPair fp = fisher_informations(constant_family(random_density_matrix(3, rng)), 0.0);
  EXPECT_EQ(fp.reqfi.value(), 0.0);
  EXPECT_EQ(fp.qfi, 0.0);
}

TEST(Fisher, CommutingMixtureReducesToClassicalFisher) {
  Eigen::VectorXd half(2), top(2);
  half << 0.5, 0.5;
  top << 1.0, 0.0;
  const ParamStateFamily f =
      mixture_family(DensityMatrix::diagonal(half), DensityMatrix::diagonal(top));
  // sum (p1 - p0)^2 / p0 = 0.25/0.5 + 0.25/0.5.
  EXPECT_NEAR(reqfi(f, 0.0).value(), 1.0, 1e-8);
  EXPECT_NEAR(qfi(f, 0.0), 1.0, 1e-8);
}

TEST(Fisher, CoherentDisplacementHasQfiFour) {
  fock::TruncationConfig cfg;
  cfg.cutoff = 24;
  const ParamStateFamily f = fock::coherent_output_family({1.0, 0.0, 1.0}, 1.0, cfg);
  const FisherPair fp = fisher_informations(f, 0.0);
  EXPECT_NEAR(fp.qfi, 4.0, 1e-4);
  // Pure-state family: the derivative leaves the support.
  EXPECT_TRUE(fp.reqfi.is_infinite());
}

TEST(Fisher, MatchesEigenvectorDerivativeExpression) {
  Rng rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    const ParamStateFamily f = random_qubit_family(rng);
    const double oracle = eigenvector_derivative_reqfi(f, 0.0, 1e-5);
    EXPECT_NEAR(reqfi(f, 0.0).value(), oracle, 1e-6 * std::max(1.0, oracle));
  }
}

TEST(FisherProperty, QfiBelowReqfi) {
  Rng rng(43);
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 2 + rep % 3;
    const ParamStateFamily f =
        mixture_family(random_density_matrix(d, rng), random_density_matrix(d, rng));
    const FisherPair fp = fisher_informations(f, 0.0);
    EXPECT_LE(fp.qfi, fp.reqfi.value() + 1e-8);
    const FisherPair q = fisher_informations(random_qubit_family(rng), 0.0);
    EXPECT_LE(q.qfi, q.reqfi.value() + 1e-8);
  }
}

TEST(FisherProperty, ReqfiIsSecondOrderRelativeEntropy) {
  Rng rng(47);
  for (int rep = 0; rep < 20; ++rep) {
    const ParamStateFamily f = random_qubit_family(rng);
    const double j = reqfi(f, 0.0).value();
    const DensityMatrix rho0 = f.at(0.0);
    double err[2];
    const double deltas[2] = {1e-2, 1e-3};
    for (int i = 0; i < 2; ++i) {
      const double d = relative_entropy(f.at(deltas[i]), rho0).value();
      err[i] = std::abs(j - 2 * d / (deltas[i] * deltas[i]));
    }
    EXPECT_LT(err[1], 1e-2 * std::max(1.0, j));
    if (err[1] > 1e-8) EXPECT_LE(err[1], 0.2 * err[0]);
  }
}

TEST(Fisher, SupportLeakageGivesInfiniteReqfi) {
  const ParamStateFamily f = mixture_family(DensityMatrix::basis_state(2, 0),
                                            DensityMatrix::maximally_mixed(2));
  EXPECT_TRUE(reqfi(f, 0.0).is_infinite());
  EXPECT_TRUE(std::isfinite(qfi(f, 0.0)));
}

TEST(Fisher, RequiresScalarFamily) {
  EXPECT_THROW(reqfi(bloch_family(std::nullopt), 0.0), PreconditionError);
}

TEST(EstimationBounds, DepolarizingChannelIsVacuous) {
  const ParamStateFamily f = bloch_curve_family({0, 0, 0.5}, {0.4, 0, 0}, {0, 0, 0}, 0.5);
  const EstimationBounds b =
      estimation_bounds_report(completely_depolarizing_channel(2), f, QuadraticCost{});
  EXPECT_EQ(b.j_half.value(), 0.0);
  EXPECT_EQ(b.f_half, 0.0);
  EXPECT_TRUE(b.vacuous);
  EXPECT_TRUE(b.inv_j.is_infinite());
  ASSERT_TRUE(b.cpuc.has_value());
  EXPECT_EQ(b.cpuc->value.value(), 0.0);
  EXPECT_TRUE(b.chain_holds);
}

TEST(EstimationBounds, RequiresQuadraticCost) {
  const ParamStateFamily f = bloch_curve_family({0, 0, 0.5}, {0.4, 0, 0}, {0, 0, 0}, 0.5);
  EXPECT_THROW(estimation_bounds_report(identity_channel(2), f, photon_number_cost(2)),
               PreconditionError);
}

TEST(EstimationBounds, RandomQubitFamiliesSatisfyChain) {
  Rng rng(53);
  for (int rep = 0; rep < 5; ++rep) {
    const ParamStateFamily f = random_qubit_family(rng);
    const KrausChannel ch = random_channel(2, 2, 3, rng);
    const EstimationBounds b = estimation_bounds_report(ch, f, QuadraticCost{});
    EXPECT_GE(b.j_half.value(), b.f_half - 1e-8);
    EXPECT_TRUE(b.chain_holds);
    ASSERT_TRUE(b.cpuc && b.cpuc->value.is_finite());
    EXPECT_GE(b.cpuc->value.value(), b.j_half.value() - 1e-4);
    EXPECT_LE(b.inv_j.value(), b.inv_f.value() + 1e-12);
  }
}

TEST(EstimationBounds, ThermalDisplacementSaturates) {
  const gaussian::FiducialChannel ch{0.9, 1.0, 1.0};
  fock::TruncationConfig cfg;
  cfg.cutoff = 30;
  // Beyond |x| ~ 0.3 the signal puts more than 1e-10 on reference levels
  // below the resolvable eigenvalue threshold and reads as a support mismatch.
  const ParamStateFamily f = fock::coherent_output_family(ch, 0.3, cfg);
  const EstimationBounds b = estimation_bounds_report(identity_channel(cfg.cutoff), f, QuadraticCost{});
  const double c = gaussian::cpuc_gaussian(ch).value();
  EXPECT_NEAR(b.j_half.value(), c, 1e-3);
  ASSERT_TRUE(b.cpuc.has_value());
  EXPECT_NEAR(b.cpuc->value.value(), c, 1e-3);
  EXPECT_TRUE(b.chain_holds);
}
