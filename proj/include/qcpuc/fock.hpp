#pragma once

#include <complex>

#include "qcpuc/family.hpp"
#include "qcpuc/gaussian.hpp"
#include "qcpuc/quantum.hpp"

namespace qcpuc::fock {

/// Fock-space truncation: levels 0..cutoff-1 are kept, and at most tail_tol
/// probability may sit in the top two kept levels or be lost to truncation.
struct TruncationConfig {
  int cutoff = 60;
  double tail_tol = 1e-8;

  /// Throws ValidationError unless cutoff >= 4 and tail_tol > 0.
  void validate() const;
};

struct FockOperator {
  int cutoff = 0;
  ComplexMatrix matrix;
};

/// Largest absolute deviation of the first and second quadrature moments of
/// a Fock-built state from their phase-space values.
inline constexpr double kMomentTolerance = 1e-6;

/// <n-1| a |n> = sqrt(n).
FockOperator annihilation(const TruncationConfig& cfg);

/// exp(alpha a^dag - alpha* a) from the truncated generator. Throws
/// NumericalError when D(alpha)|0> puts more than tail_tol in the top two levels.
FockOperator displacement_op(std::complex<double> alpha, const TruncationConfig& cfg);

/// exp((r/2)(a^dag^2 - a^2)), so the vacuum maps to covariance
/// diag(e^{2r}, e^{-2r})/2, i.e. omega = e^{-2r}. Same leakage check as
/// displacement_op.
FockOperator squeeze_op(double r, const TruncationConfig& cfg);

/// Largest entry of |U^dag U - I|.
double unitarity_defect(const FockOperator& u);

/// Geometric populations N^n / (N+1)^{n+1}, renormalized after truncation.
DensityMatrix thermal_state(double n_thermal, const TruncationConfig& cfg);

/// D(alpha) S(r) rho_th(N) S^dag D^dag with r = -ln(omega)/2, built on a
/// padded space and truncated to the cutoff. Throws NumericalError on a tail
/// violation or when the moments miss from_params(p) by more than
/// kMomentTolerance.
DensityMatrix gaussian_state_fock(const gaussian::GaussianParams& p, const TruncationConfig& cfg);

/// As gaussian_state_fock, doubling the cutoff on tail violations up to
/// max_cutoff. The configuration that succeeded is written to `used` if given.
DensityMatrix gaussian_state_fock_adaptive(const gaussian::GaussianParams& p,
                                           TruncationConfig cfg, int max_cutoff = 256,
                                           TruncationConfig* used = nullptr);

/// Phase-space moments of a Fock-space state.
struct FockMoments {
  Eigen::Vector2d mean;
  Eigen::Matrix2d covariance;
  double mean_photon_number = 0.0;
};

FockMoments fock_moments(const DensityMatrix& rho);

/// D(rho1 || rho2) for the two Fock-built states. For mixed rho2 the
/// logarithm is taken from the construction, U ln(rho_th) U^dag with
/// U = D(alpha) S(r), rather than from a numerical spectrum. Pure rho2 falls
/// back to the dense relative entropy, which is 0 or +inf.
ExtendedReal oracle_relative_entropy(const gaussian::GaussianParams& p1,
                                     const gaussian::GaussianParams& p2,
                                     const TruncationConfig& cfg);

/// Channel outputs of real coherent inputs x -> Lambda[|x><x|] for
/// x in [-x_max, x_max], realized in Fock space; free point x = 0.
ParamStateFamily coherent_output_family(const gaussian::FiducialChannel& ch, double x_max,
                                        const TruncationConfig& cfg);

}  // namespace qcpuc::fock
