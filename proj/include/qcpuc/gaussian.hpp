#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "qcpuc/extended_real.hpp"

namespace qcpuc::gaussian {

// Phase-space conventions: quadratures x = (a + a^dag)/sqrt2, p = (a - a^dag)/(i sqrt2),
// vacuum covariance I/2, mean vector (sqrt2 Re alpha, sqrt2 Im alpha).

/// One-mode Gaussian state by its first and second moments.
struct GaussianState {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d covariance = 0.5 * Eigen::Matrix2d::Identity();

  /// Throws ValidationError unless the covariance is symmetric, positive
  /// definite and satisfies det >= 1/4 - 1e-12.
  void validate() const;
};

/// Displaced squeezed thermal state D(alpha) S(r) rho_th(N) S^dag D^dag with
/// omega = exp(-2r).
struct GaussianParams {
  double n_thermal = 0.0;
  double omega = 1.0;
  std::complex<double> alpha = 0.0;

  static GaussianParams vacuum() { return {}; }
  static GaussianParams coherent(std::complex<double> a) { return {0.0, 1.0, a}; }
  static GaussianParams thermal(double n) { return {n, 1.0, 0.0}; }

  void validate() const;
};

/// Fiducial one-mode channel: mean -> sqrt|eta| (x, sgn(eta) p), covariance
/// -> |eta| sigma + |1 - eta| (N~ + 1/2) diag(1/omega~, omega~).
struct FiducialChannel {
  double eta = 1.0;
  double n_tilde = 0.0;
  double omega_tilde = 1.0;

  /// Parameter ranges plus the uncertainty relation on the vacuum output.
  void validate() const;
};

/// Thermal photon number and squeezing of a diagonal covariance
/// (N + 1/2) diag(1/omega, omega).
struct OutputParams {
  double n_thermal = 0.0;
  double omega = 1.0;
};

enum class ChannelClass {
  Trivial,           // eta = 0: every input maps to the same state
  Lossy,             // vacuum output is pure
  PhaseInsensitive,  // omega~ = 1, mixed vacuum output
  Squeezing,         // omega~ != 1, mixed vacuum output
};

std::string to_string(ChannelClass c);

GaussianState from_params(const GaussianParams& p);

/// |alpha|^2 + (N + 1/2)(omega + 1/omega)/2 - 1/2.
double mean_photon_number(const GaussianParams& p);

/// sqrt(det sigma); throws ValidationError when det < 1/4 beyond 1e-12.
double symplectic_eigenvalue(const Eigen::Matrix2d& sigma);

/// (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2), the entropy of a mode with
/// symplectic eigenvalue x; g(1/2) = 0. Throws DomainError for x < 1/2.
double g_function(double x);

/// Entropy of a thermal mode with mean photon number n: g(n + 1/2).
double thermal_entropy(double n);

GaussianState apply_fiducial(const FiducialChannel& ch, const GaussianState& s);

/// (N, omega) of a diagonal covariance: omega = sqrt(s22/s11),
/// N + 1/2 = sqrt(s11 s22). Throws PreconditionError for off-diagonal input.
OutputParams output_params(const Eigen::Matrix2d& sigma);

/// Full parameters (N_out, omega_out, alpha_out) of the channel output for a
/// Gaussian input, alpha_out = sqrt|eta| (Re alpha + i sgn(eta) Im alpha).
GaussianParams output_gaussian_params(const FiducialChannel& ch, const GaussianParams& p);

/// D(s1 || s2) = -g(gamma1) + ln Z + Tr(sigma1 M)/2 + dx^T M dx / 2 with
/// Z = sqrt(gamma2^2 - 1/4) and M = (S^T)^{-1} Mdiag S^{-1} built from the
/// symplectic diagonalization sigma2 = gamma2 S S^T. Infinite when s2 is pure
/// and differs from s1.
ExtendedReal gaussian_relative_entropy(const GaussianState& s1, const GaussianState& s2);

/// Closed form of D(Lambda[rho(p)] || Lambda[vacuum]) in terms of the output
/// parameters (N, omega), the vacuum-output parameters (N0, omega0), eta and alpha.
ExtendedReal relent_vs_vacuum_output(const FiducialChannel& ch, const GaussianParams& p);

/// (N0, omega0) of the vacuum output, from the channel parameters directly.
OutputParams vacuum_output_params(const FiducialChannel& ch);

ChannelClass classify(const FiducialChannel& ch);

/// Capacity per unit cost with mean-photon-number cost: +inf for lossy
/// channels, 0 for eta = 0, otherwise |eta| omega_max ln((N0 + 1)/N0) with
/// omega_max = max(omega0, 1/omega0).
ExtendedReal cpuc_gaussian(const FiducialChannel& ch);

struct NumericalSupremum {
  ExtendedReal value;
  GaussianParams argmax;
  bool converged = true;
};

/// Brute-force sup of relent_vs_vacuum_output / nbar over inputs with
/// N in [0, 2], omega in [0.5, 2], nbar in [1e-6, 1] and alpha real or
/// imaginary: grid scan then Nelder-Mead from the best nodes.
NumericalSupremum cpuc_gaussian_numeric(const FiducialChannel& ch);

/// Coherent-encoding capacity-cost of a phase-insensitive channel:
/// g(|eta| nbar + N0) - g(N0) with g taking photon numbers.
double coherent_capacity_cost(const FiducialChannel& ch, double nbar);

struct PiePoint {
  double nbar;
  double pie;       // nats per photon
  double capacity;  // nats per channel use
};

/// Photon information efficiency C(nbar)/nbar over the grid (ascending input
/// order preserved). Requires omega~ = 1 and positive grid values.
std::vector<PiePoint> pie_curve(const FiducialChannel& ch, std::span<const double> nbar_grid);

}  // namespace qcpuc::gaussian
