#include "qcpuc/gaussian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "qcpuc/errors.hpp"
#include "qcpuc/optimize.hpp"

namespace qcpuc::gaussian {
namespace {

constexpr double kPurityTol = 1e-12;

bool finite_all(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double v) { return std::isfinite(v); });
}

double sgn(double v) { return (v > 0) - (v < 0); }

Eigen::Matrix2d noise_covariance(const FiducialChannel& ch) {
  const double w = std::abs(1.0 - ch.eta) * (ch.n_tilde + 0.5);
  Eigen::Matrix2d y = Eigen::Matrix2d::Zero();
  y(0, 0) = w / ch.omega_tilde;
  y(1, 1) = w * ch.omega_tilde;
  return y;
}

double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

}  // namespace

std::string to_string(ChannelClass c) {
  switch (c) {
    case ChannelClass::Trivial:
      return "trivial";
    case ChannelClass::Lossy:
      return "lossy";
    case ChannelClass::PhaseInsensitive:
      return "phase-insensitive";
    case ChannelClass::Squeezing:
      return "squeezing";
  }
  return "unknown";
}

void GaussianState::validate() const {
  if (!mean.allFinite() || !covariance.allFinite()) {
    throw ValidationError("GaussianState: non-finite entries");
  }
  if (std::abs(covariance(0, 1) - covariance(1, 0)) > 1e-12 * std::max(1.0, covariance.norm())) {
    throw ValidationError("GaussianState: covariance not symmetric");
  }
  if (!(covariance(0, 0) > 0.0) || !(covariance.determinant() > 0.0)) {
    throw ValidationError("GaussianState: covariance not positive definite");
  }
  if (covariance.determinant() < 0.25 - 1e-12) {
    throw ValidationError("GaussianState: covariance violates the uncertainty relation");
  }
}

void GaussianParams::validate() const {
  if (!finite_all({n_thermal, omega, alpha.real(), alpha.imag()})) {
    throw ValidationError("GaussianParams: non-finite value");
  }
  if (n_thermal < 0.0) throw ValidationError("GaussianParams: negative thermal photon number");
  if (!(omega > 0.0)) throw ValidationError("GaussianParams: squeezing parameter must be positive");
}

void FiducialChannel::validate() const {
  if (!finite_all({eta, n_tilde, omega_tilde})) {
    throw ValidationError("FiducialChannel: non-finite parameter");
  }
  if (n_tilde < 0.0) throw ValidationError("FiducialChannel: n_tilde must be >= 0");
  if (!(omega_tilde > 0.0)) throw ValidationError("FiducialChannel: omega_tilde must be > 0");
  const Eigen::Matrix2d vac = std::abs(eta) * 0.5 * Eigen::Matrix2d::Identity() + noise_covariance(*this);
  if (vac.determinant() < 0.25 - 1e-12) {
    throw ValidationError("FiducialChannel: vacuum output violates the uncertainty relation");
  }
}

GaussianState from_params(const GaussianParams& p) {
  p.validate();
  GaussianState s;
  s.mean = std::numbers::sqrt2 * Eigen::Vector2d(p.alpha.real(), p.alpha.imag());
  s.covariance = Eigen::Matrix2d::Zero();
  s.covariance(0, 0) = (p.n_thermal + 0.5) / p.omega;
  s.covariance(1, 1) = (p.n_thermal + 0.5) * p.omega;
  return s;
}

double mean_photon_number(const GaussianParams& p) {
  p.validate();
  const double n = std::norm(p.alpha) + (p.n_thermal + 0.5) * (p.omega + 1.0 / p.omega) / 2 - 0.5;
  return std::max(n, 0.0);
}

double symplectic_eigenvalue(const Eigen::Matrix2d& sigma) {
  const double det = sigma.determinant();
  if (!(det >= 0.25 - 1e-12)) {
    throw ValidationError("symplectic_eigenvalue: det(sigma) = " + std::to_string(det) + " < 1/4");
  }
  return std::sqrt(std::max(det, 0.25));
}

double g_function(double x) {
  if (!(x >= 0.5 - 1e-12)) throw DomainError("g_function: argument below 1/2");
  if (std::isinf(x)) return std::numeric_limits<double>::infinity();
  return xlogx(x + 0.5) - xlogx(x - 0.5);
}

double thermal_entropy(double n) { return g_function(n + 0.5); }

GaussianState apply_fiducial(const FiducialChannel& ch, const GaussianState& s) {
  ch.validate();
  s.validate();
  GaussianState out;
  const double scale = std::sqrt(std::abs(ch.eta));
  out.mean = Eigen::Vector2d(scale * s.mean(0), scale * sgn(ch.eta) * s.mean(1));
  out.covariance = std::abs(ch.eta) * s.covariance + noise_covariance(ch);
  return out;
}

OutputParams output_params(const Eigen::Matrix2d& sigma) {
  const double scale = std::max(1.0, sigma.cwiseAbs().maxCoeff());
  if (std::abs(sigma(0, 1)) > 1e-12 * scale || std::abs(sigma(1, 0)) > 1e-12 * scale) {
    throw PreconditionError("output_params: covariance is not diagonal");
  }
  if (!(sigma(0, 0) > 0.0 && sigma(1, 1) > 0.0)) {
    throw ValidationError("output_params: covariance not positive definite");
  }
  OutputParams out;
  out.omega = std::sqrt(sigma(1, 1) / sigma(0, 0));
  out.n_thermal = std::max(symplectic_eigenvalue(sigma) - 0.5, 0.0);
  return out;
}

GaussianParams output_gaussian_params(const FiducialChannel& ch, const GaussianParams& p) {
  const GaussianState out = apply_fiducial(ch, from_params(p));
  const OutputParams op = output_params(out.covariance);
  const double scale = std::sqrt(std::abs(ch.eta));
  return GaussianParams{op.n_thermal, op.omega,
                        {scale * p.alpha.real(), scale * sgn(ch.eta) * p.alpha.imag()}};
}

ExtendedReal gaussian_relative_entropy(const GaussianState& s1, const GaussianState& s2) {
  s1.validate();
  s2.validate();
  const double gamma1 = symplectic_eigenvalue(s1.covariance);
  const double gamma2 = symplectic_eigenvalue(s2.covariance);
  const Eigen::Vector2d dx = s1.mean - s2.mean;

  if (gamma2 - 0.5 <= kPurityTol) {
    const bool same = dx.cwiseAbs().maxCoeff() <= 1e-12 &&
                      (s1.covariance - s2.covariance).cwiseAbs().maxCoeff() <= 1e-12;
    return same ? ExtendedReal::finite(0.0) : ExtendedReal::infinity();
  }

  // sigma2 = gamma2 S S^T with S = sqrt(sigma2 / gamma2) symmetric and symplectic.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(s2.covariance / gamma2);
  const Eigen::Matrix2d s = eig.operatorSqrt();
  const Eigen::Matrix2d s_inv = s.inverse();
  const double log_ratio = std::log((2 * gamma2 + 1) / (2 * gamma2 - 1));
  const Eigen::Matrix2d m = s_inv.transpose() * (log_ratio * Eigen::Matrix2d::Identity()) * s_inv;
  const double log_z = 0.5 * std::log(gamma2 * gamma2 - 0.25);

  const double d = -g_function(gamma1) + log_z + 0.5 * (s1.covariance * m).trace() +
                   0.5 * dx.dot(m * dx);
  return ExtendedReal::finite(std::max(d, 0.0));
}

OutputParams vacuum_output_params(const FiducialChannel& ch) {
  ch.validate();
  const double a = std::abs(ch.eta) / 2;
  const double b = std::abs(1.0 - ch.eta) * (ch.n_tilde + 0.5);
  const double s11 = a + b / ch.omega_tilde;
  const double s22 = a + b * ch.omega_tilde;
  OutputParams out;
  out.omega = std::sqrt(s22 / s11);
  out.n_thermal = std::max(std::sqrt(s11 * s22) - 0.5, 0.0);
  return out;
}

ExtendedReal relent_vs_vacuum_output(const FiducialChannel& ch, const GaussianParams& p) {
  ch.validate();
  p.validate();
  if (ch.eta == 0.0) return ExtendedReal::finite(0.0);
  const GaussianParams out = output_gaussian_params(ch, p);
  const OutputParams vac = vacuum_output_params(ch);
  const double n = out.n_thermal;
  const double w = out.omega;
  const double n0 = vac.n_thermal;
  const double w0 = vac.omega;

  if (n0 <= kPurityTol) {
    const bool same = std::abs(n - n0) <= 1e-12 && std::abs(w - w0) <= 1e-12 &&
                      std::abs(out.alpha) <= 1e-12;
    return same ? ExtendedReal::finite(0.0) : ExtendedReal::infinity();
  }

  const double log_ratio = std::log1p(1.0 / n0);
  const double re = p.alpha.real();
  const double im = p.alpha.imag();
  const double d = xlogx(n) - xlogx(n + 1) + 0.5 * std::log(n0 * (n0 + 1)) +
                   (n + 0.5) * (w0 * w0 + w * w) / (2 * w0 * w) * log_ratio +
                   std::abs(ch.eta) * (re * re * w0 + im * im / w0) * log_ratio;
  return ExtendedReal::finite(std::max(d, 0.0));
}

ChannelClass classify(const FiducialChannel& ch) {
  ch.validate();
  if (ch.eta == 0.0) return ChannelClass::Trivial;
  if (vacuum_output_params(ch).n_thermal <= kPurityTol) return ChannelClass::Lossy;
  return ch.omega_tilde == 1.0 ? ChannelClass::PhaseInsensitive : ChannelClass::Squeezing;
}

ExtendedReal cpuc_gaussian(const FiducialChannel& ch) {
  switch (classify(ch)) {
    case ChannelClass::Trivial:
      return ExtendedReal::finite(0.0);
    case ChannelClass::Lossy:
      return ExtendedReal::infinity();
    default:
      break;
  }
  const OutputParams vac = vacuum_output_params(ch);
  const double omega_max = std::max(vac.omega, 1.0 / vac.omega);
  return ExtendedReal::finite(std::abs(ch.eta) * omega_max * std::log1p(1.0 / vac.n_thermal));
}

NumericalSupremum cpuc_gaussian_numeric(const FiducialChannel& ch) {
  ch.validate();
  // u = (N_in, ln omega_in, log10 nbar).
  const ParameterBox box{{0.0, std::log(0.5), -6.0}, {2.0, std::log(2.0), 0.0}};
  constexpr int kGrid = 33;
  constexpr int kStarts = 5;

  struct Candidate {
    double ratio;
    std::vector<double> u;
    bool imaginary;
  };

  auto to_params = [](std::span<const double> u, bool imaginary, GaussianParams& p) {
    p.n_thermal = u[0];
    p.omega = std::exp(u[1]);
    const double nbar = std::pow(10.0, u[2]);
    const double rest = (p.n_thermal + 0.5) * (p.omega + 1.0 / p.omega) / 2 - 0.5;
    const double amp2 = nbar - rest;
    if (amp2 < 0.0) return -1.0;
    const double amp = std::sqrt(amp2);
    p.alpha = imaginary ? std::complex<double>(0.0, amp) : std::complex<double>(amp, 0.0);
    return nbar;
  };

  NumericalSupremum result;
  result.value = ExtendedReal::finite(0.0);
  auto ratio_at = [&](std::span<const double> u, bool imaginary, GaussianParams& p) {
    const double nbar = to_params(u, imaginary, p);
    if (nbar <= 0.0) return -std::numeric_limits<double>::infinity();
    const ExtendedReal d = relent_vs_vacuum_output(ch, p);
    return d.is_infinite() ? std::numeric_limits<double>::infinity() : d.value() / nbar;
  };

  const auto grid = grid_points(box, kGrid);
  std::vector<Candidate> candidates;
  for (bool imaginary : {false, true}) {
    for (const auto& u : grid) {
      GaussianParams p;
      const double r = ratio_at(u, imaginary, p);
      if (std::isinf(r) && r > 0) {
        result.value = ExtendedReal::infinity();
        result.argmax = p;
        return result;
      }
      if (std::isfinite(r)) candidates.push_back({r, u, imaginary});
    }
  }
  if (candidates.empty()) return result;
  std::partial_sort(candidates.begin(),
                    candidates.begin() + std::min<std::size_t>(kStarts, candidates.size()),
                    candidates.end(),
                    [](const Candidate& a, const Candidate& b) { return a.ratio > b.ratio; });

  double best = candidates.front().ratio;
  to_params(candidates.front().u, candidates.front().imaginary, result.argmax);
  NelderMeadOptions opts;
  opts.initial_step = 1.0 / (kGrid - 1);
  bool converged = true;
  for (std::size_t s = 0; s < std::min<std::size_t>(kStarts, candidates.size()); ++s) {
    const bool imaginary = candidates[s].imaginary;
    auto objective = [&](std::span<const double> u) {
      GaussianParams p;
      const double r = ratio_at(u, imaginary, p);
      return std::isfinite(r) ? -r : std::numeric_limits<double>::infinity();
    };
    const NelderMeadResult nm = nelder_mead_minimize(objective, candidates[s].u, box, opts);
    converged = converged && nm.converged;
    if (-nm.value > best) {
      best = -nm.value;
      to_params(nm.x, imaginary, result.argmax);
    }
  }
  result.value = ExtendedReal::finite(best);
  result.converged = converged;
  return result;
}

double coherent_capacity_cost(const FiducialChannel& ch, double nbar) {
  ch.validate();
  if (ch.omega_tilde != 1.0) {
    throw PreconditionError("coherent_capacity_cost: channel is not phase-insensitive");
  }
  if (!(nbar >= 0.0)) throw DomainError("coherent_capacity_cost: negative photon number");
  const double n0 = vacuum_output_params(ch).n_thermal;
  return std::max(thermal_entropy(std::abs(ch.eta) * nbar + n0) - thermal_entropy(n0), 0.0);
}

std::vector<PiePoint> pie_curve(const FiducialChannel& ch, std::span<const double> nbar_grid) {
  ch.validate();
  if (ch.omega_tilde != 1.0) {
    throw PreconditionError("pie_curve: requires a phase-insensitive channel (omega_tilde = 1)");
  }
  std::vector<PiePoint> out;
  out.reserve(nbar_grid.size());
  for (double nbar : nbar_grid) {
    if (!(nbar > 0.0) || !std::isfinite(nbar)) {
      throw DomainError("pie_curve: grid values must be positive and finite");
    }
    const double c = coherent_capacity_cost(ch, nbar);
    out.push_back({nbar, c / nbar, c});
  }
  return out;
}

}  // namespace qcpuc::gaussian
