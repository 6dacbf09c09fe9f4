#include "qcpuc/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcpuc/errors.hpp"

namespace qcpuc::fock {
namespace {

using gaussian::GaussianParams;

// Extra levels carried while building states before truncating to the cutoff.
int padded_dim(int cutoff) { return cutoff + std::max(20, cutoff / 2); }

ComplexMatrix annihilation_matrix(int dim) {
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

ComplexMatrix displacement_matrix(std::complex<double> alpha, int dim) {
  if (alpha == 0.0) return ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix a = annihilation_matrix(dim);
  const ComplexMatrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
  return exp_anti_hermitian(gen);
}

ComplexMatrix squeeze_matrix(double r, int dim) {
  if (r == 0.0) return ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix a = annihilation_matrix(dim);
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix gen = (r / 2) * (a2.adjoint() - a2);
  return exp_anti_hermitian(gen);
}

void check_vacuum_leakage(const ComplexMatrix& u, const TruncationConfig& cfg, const char* what) {
  const int c = cfg.cutoff;
  const double top = std::norm(u(c - 1, 0)) + std::norm(u(c - 2, 0));
  if (top > cfg.tail_tol) {
    throw NumericalError(std::string(what) + ": truncation leakage " + std::to_string(top) +
                         " exceeds tail_tol at cutoff " + std::to_string(c));
  }
}

Eigen::VectorXd thermal_populations(double n_thermal, int dim) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
  if (n_thermal == 0.0) {
    p(0) = 1.0;
    return p;
  }
  const double q = n_thermal / (n_thermal + 1.0);
  double v = 1.0 / (n_thermal + 1.0);
  for (int n = 0; n < dim; ++n, v *= q) p(n) = v;
  return p;
}

// D(alpha) S(r) on the padded space.
ComplexMatrix gaussian_unitary(const GaussianParams& p, int dim) {
  const double r = -std::log(p.omega) / 2;
  return displacement_matrix(p.alpha, dim) * squeeze_matrix(r, dim);
}

void check_moments(const DensityMatrix& rho, const GaussianParams& p) {
  const FockMoments m = fock_moments(rho);
  const gaussian::GaussianState expected = gaussian::from_params(p);
  const double err = std::max((m.mean - expected.mean).cwiseAbs().maxCoeff(),
                              (m.covariance - expected.covariance).cwiseAbs().maxCoeff());
  if (err > kMomentTolerance) {
    throw NumericalError("gaussian_state_fock: moments deviate from phase space by " +
                         std::to_string(err));
  }
}

}  // namespace

void TruncationConfig::validate() const {
  if (cutoff < 4) throw ValidationError("TruncationConfig: cutoff must be >= 4");
  if (!(tail_tol > 0.0)) throw ValidationError("TruncationConfig: tail_tol must be > 0");
}

FockOperator annihilation(const TruncationConfig& cfg) {
  cfg.validate();
  return {cfg.cutoff, annihilation_matrix(cfg.cutoff)};
}

FockOperator displacement_op(std::complex<double> alpha, const TruncationConfig& cfg) {
  cfg.validate();
  FockOperator d{cfg.cutoff, displacement_matrix(alpha, cfg.cutoff)};
  check_vacuum_leakage(d.matrix, cfg, "displacement_op");
  return d;
}

FockOperator squeeze_op(double r, const TruncationConfig& cfg) {
  cfg.validate();
  FockOperator s{cfg.cutoff, squeeze_matrix(r, cfg.cutoff)};
  check_vacuum_leakage(s.matrix, cfg, "squeeze_op");
  return s;
}

double unitarity_defect(const FockOperator& u) {
  const ComplexMatrix d = u.matrix.adjoint() * u.matrix -
                          ComplexMatrix::Identity(u.matrix.cols(), u.matrix.cols());
  return d.cwiseAbs().maxCoeff();
}

DensityMatrix thermal_state(double n_thermal, const TruncationConfig& cfg) {
  cfg.validate();
  if (!(n_thermal >= 0.0) || !std::isfinite(n_thermal)) {
    throw ValidationError("thermal_state: N must be finite and >= 0");
  }
  Eigen::VectorXd p = thermal_populations(n_thermal, cfg.cutoff);
  const double lost = 1.0 - p.sum();
  const double top = p(cfg.cutoff - 1) + p(cfg.cutoff - 2);
  if (lost + top > cfg.tail_tol) {
    throw NumericalError("thermal_state: tail weight " + std::to_string(lost + top) +
                         " exceeds tail_tol at cutoff " + std::to_string(cfg.cutoff));
  }
  return DensityMatrix::diagonal(p / p.sum());
}

DensityMatrix gaussian_state_fock(const GaussianParams& p, const TruncationConfig& cfg) {
  cfg.validate();
  p.validate();
  const int c = cfg.cutoff;
  const int w = padded_dim(c);
  const ComplexMatrix u = gaussian_unitary(p, w);
  const Eigen::VectorXd pops = thermal_populations(p.n_thermal, w);
  const ComplexMatrix full = u * pops.asDiagonal() * u.adjoint();
  ComplexMatrix rho = full.topLeftCorner(c, c);

  const double kept = rho.trace().real();
  const double lost = 1.0 - kept;
  const double top = rho(c - 1, c - 1).real() + rho(c - 2, c - 2).real();
  if (lost + top > cfg.tail_tol) {
    throw NumericalError("gaussian_state_fock: tail weight " + std::to_string(lost + top) +
                         " exceeds tail_tol at cutoff " + std::to_string(c));
  }
  rho /= kept;
  DensityMatrix state(hermitian_part(rho));
  check_moments(state, p);
  return state;
}

DensityMatrix gaussian_state_fock_adaptive(const GaussianParams& p, TruncationConfig cfg,
                                           int max_cutoff, TruncationConfig* used) {
  cfg.validate();
  for (;;) {
    try {
      DensityMatrix rho = gaussian_state_fock(p, cfg);
      if (used != nullptr) *used = cfg;
      return rho;
    } catch (const NumericalError&) {
      if (cfg.cutoff >= max_cutoff) throw;
      cfg.cutoff = std::min(2 * cfg.cutoff, max_cutoff);
    }
  }
}

FockMoments fock_moments(const DensityMatrix& rho) {
  const ComplexMatrix a = annihilation_matrix(rho.dim());
  const ComplexMatrix& m = rho.matrix();
  const Complex mean_a = (m * a).trace();
  const Complex mean_a2 = (m * a * a).trace();
  const double n = (m * a.adjoint() * a).trace().real();

  FockMoments out;
  out.mean_photon_number = n;
  const double x = std::sqrt(2.0) * mean_a.real();
  const double q = std::sqrt(2.0) * mean_a.imag();
  out.mean = Eigen::Vector2d(x, q);
  out.covariance(0, 0) = mean_a2.real() + n + 0.5 - x * x;
  out.covariance(1, 1) = -mean_a2.real() + n + 0.5 - q * q;
  out.covariance(0, 1) = mean_a2.imag() - x * q;
  out.covariance(1, 0) = out.covariance(0, 1);
  return out;
}

ExtendedReal oracle_relative_entropy(const GaussianParams& p1, const GaussianParams& p2,
                                     const TruncationConfig& cfg) {
  const DensityMatrix rho1 = gaussian_state_fock(p1, cfg);
  const DensityMatrix rho2 = gaussian_state_fock(p2, cfg);
  if (p2.n_thermal == 0.0) return relative_entropy(rho1, rho2);

  const int c = cfg.cutoff;
  const int w = padded_dim(c);
  const ComplexMatrix u = gaussian_unitary(p2, w);
  const double log_q = std::log(p2.n_thermal / (p2.n_thermal + 1.0));
  Eigen::VectorXd log_pops(w);
  for (int n = 0; n < w; ++n) log_pops(n) = -std::log1p(p2.n_thermal) + n * log_q;
  const ComplexMatrix log_rho2 = (u * log_pops.asDiagonal() * u.adjoint()).topLeftCorner(c, c);

  const double cross = (rho1.matrix() * log_rho2).trace().real();
  return ExtendedReal::finite(std::max(-von_neumann_entropy(rho1) - cross, 0.0));
}

ParamStateFamily coherent_output_family(const gaussian::FiducialChannel& ch, double x_max,
                                        const TruncationConfig& cfg) {
  ch.validate();
  cfg.validate();
  if (!(x_max > 0.0) || !std::isfinite(x_max)) {
    throw ValidationError("coherent_output_family: x_max must be positive and finite");
  }
  auto map = [ch, cfg](std::span<const double> x) {
    const GaussianParams in = GaussianParams::coherent({x[0], 0.0});
    return gaussian_state_fock(gaussian::output_gaussian_params(ch, in), cfg);
  };
  return ParamStateFamily("coherent-output", cfg.cutoff, ParameterBox{{-x_max}, {x_max}}, map,
                          std::vector<double>{0.0});
}

}  // namespace qcpuc::fock
