#include "qcpuc/estimation.hpp"

#include <cmath>

#include "qcpuc/errors.hpp"

namespace qcpuc {

double log_mean_inverse(double a, double b) {
  const double m = 0.5 * (a + b);
  const double t = 0.5 * (a - b) / m;
  // ln(a/b) / (a - b) = atanh(t) / (t m).
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return (1.0 + t2 / 3.0 + t2 * t2 / 5.0) / m;
  }
  return std::atanh(t) / (t * m);
}

namespace {

void require_scalar(const ParamStateFamily& family) {
  if (family.param_dim() != 1) {
    throw PreconditionError("Fisher information needs a one-parameter family; '" + family.name() +
                            "' has " + std::to_string(family.param_dim()));
  }
}

}  // namespace

FisherPair fisher_informations(const ParamStateFamily& family, double x0) {
  require_scalar(family);
  const DensityMatrix rho = family.at(x0);
  const ComplexMatrix drho = family_derivative(family, std::span<const double>(&x0, 1));
  const SpectralDecomposition& eig = rho.spectrum();
  const ComplexMatrix r = eig.eigenvectors.adjoint() * drho * eig.eigenvectors;
  const Eigen::VectorXd& p = eig.eigenvalues;
  const double cut = eig.support_threshold();
  const int d = eig.dim();

  // Finite-difference noise on rho' is ~1e-11; genuine leakage is O(1).
  const double leak_tol = 1e-7 * std::max(1.0, r.cwiseAbs().maxCoeff());

  FisherPair out;
  double j = 0.0;
  double f = 0.0;
  bool leaks = false;
  for (int n = 0; n < d; ++n) {
    for (int k = 0; k < d; ++k) {
      const double w = std::norm(r(n, k));
      const bool n_in = p(n) > cut;
      const bool k_in = p(k) > cut;
      if (n_in && k_in) {
        j += w * log_mean_inverse(p(n), p(k));
      } else if (std::sqrt(w) > leak_tol) {
        leaks = true;
      }
      const double s = p(n) + p(k);
      if (s > 1e-12) f += 2.0 * w / s;
    }
  }
  out.reqfi = leaks ? ExtendedReal::infinity() : ExtendedReal::finite(j);
  out.qfi = std::max(f, 0.0);
  return out;
}

ExtendedReal reqfi(const ParamStateFamily& family, double x0) {
  return fisher_informations(family, x0).reqfi;
}

double qfi(const ParamStateFamily& family, double x0) {
  return fisher_informations(family, x0).qfi;
}

EstimationBounds estimation_bounds_report(const KrausChannel& channel,
                                          const ParamStateFamily& family,
                                          const CostFunction& cost, bool compute_cpuc,
                                          const CpucOptions& options) {
  if (!std::holds_alternative<QuadraticCost>(cost)) {
    throw PreconditionError("estimation_bounds_report: requires the quadratic cost x^2");
  }
  require_scalar(family);
  if (!family.free_point() || (*family.free_point())[0] != 0.0) {
    throw PreconditionError("estimation_bounds_report: family must have its free point at x = 0");
  }
  const ParamStateFamily out_family = family.through(channel);
  const FisherPair fp = fisher_informations(out_family, 0.0);

  EstimationBounds report;
  const double j = fp.reqfi.value();
  report.j_half = fp.reqfi.is_infinite() ? ExtendedReal::infinity() : ExtendedReal::finite(j / 2);
  report.f_half = fp.qfi / 2;
  report.inv_j = fp.reqfi.is_infinite() ? ExtendedReal::finite(0.0)
                 : j > 0                ? ExtendedReal::finite(1.0 / j)
                                        : ExtendedReal::infinity();
  report.inv_f = fp.qfi > 0 ? ExtendedReal::finite(1.0 / fp.qfi) : ExtendedReal::infinity();
  report.vacuous = fp.reqfi.is_finite() && j == 0.0 && fp.qfi == 0.0;
  // Allow finite-difference slack in F <= J.
  report.chain_holds = fp.reqfi.is_infinite() || fp.qfi <= j + 1e-8 * std::max(1.0, j);

  if (compute_cpuc) {
    report.cpuc = capacity_per_unit_cost(channel, family, cost, options);
    const ExtendedReal& c = report.cpuc->value;
    if (report.j_half.is_infinite()) {
      report.chain_holds = report.chain_holds && c.is_infinite();
    } else if (c.is_finite()) {
      // The ratio is only sampled down to the resolved-cost floor, not at x = 0.
      const double slack = 1e-4 * std::max(1.0, report.j_half.value());
      report.chain_holds = report.chain_holds && c.value() >= report.j_half.value() - slack;
    }
  }
  return report;
}

}  // namespace qcpuc
