#include "qcpuc/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>

#include "qcpuc/errors.hpp"
#include "qcpuc/optimize.hpp"

namespace qcpuc {

Ensemble::Ensemble(std::vector<EnsembleSymbol> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw ValidationError("Ensemble: no symbols");
  double total = 0.0;
  const int d = symbols_.front().state.dim();
  for (const auto& s : symbols_) {
    if (!(s.prior >= 0.0 && s.prior <= 1.0)) throw ValidationError("Ensemble: prior outside [0,1]");
    if (!(s.cost >= 0.0)) throw ValidationError("Ensemble: negative cost");
    if (s.state.dim() != d) throw ValidationError("Ensemble: states differ in dimension");
    total += s.prior;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("Ensemble: priors sum to " + std::to_string(total));
  }
}

DensityMatrix Ensemble::average_state() const {
  ComplexMatrix m = ComplexMatrix::Zero(dim(), dim());
  for (const auto& s : symbols_) m += s.prior * s.state.matrix();
  return DensityMatrix(m);
}

double Ensemble::average_cost() const {
  double c = 0.0;
  for (const auto& s : symbols_) c += s.prior * s.cost;
  return c;
}

double mutual_information(std::span<const double> prior, const Eigen::MatrixXd& conditional) {
  if (static_cast<Eigen::Index>(prior.size()) != conditional.rows()) {
    throw ValidationError("mutual_information: prior length does not match rows");
  }
  double psum = 0.0;
  for (double p : prior) {
    if (!(p >= 0.0)) throw ValidationError("mutual_information: negative prior");
    psum += p;
  }
  if (std::abs(psum - 1.0) > 1e-12) throw ValidationError("mutual_information: prior not normalized");
  for (Eigen::Index x = 0; x < conditional.rows(); ++x) {
    if ((conditional.row(x).array() < 0.0).any() ||
        std::abs(conditional.row(x).sum() - 1.0) > 1e-12) {
      throw ValidationError("mutual_information: conditional is not row-stochastic");
    }
  }
  auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
  Eigen::VectorXd py = Eigen::VectorXd::Zero(conditional.cols());
  double h_cond = 0.0;
  for (Eigen::Index x = 0; x < conditional.rows(); ++x) {
    py += prior[x] * conditional.row(x).transpose();
    for (Eigen::Index y = 0; y < conditional.cols(); ++y) h_cond -= prior[x] * xlogx(conditional(x, y));
  }
  double h_y = 0.0;
  for (Eigen::Index y = 0; y < py.size(); ++y) h_y -= xlogx(py(y));
  return std::max(h_y - h_cond, 0.0);
}

namespace {

void require_input_dim(const Ensemble& e, const KrausChannel& ch) {
  if (e.dim() != ch.dim_in()) {
    throw ValidationError("ensemble dimension " + std::to_string(e.dim()) +
                          " does not match channel input " + std::to_string(ch.dim_in()));
  }
}

std::vector<DensityMatrix> outputs(const Ensemble& e, const KrausChannel& ch) {
  std::vector<DensityMatrix> out;
  out.reserve(e.size());
  for (const auto& s : e.symbols()) out.push_back(apply(ch, s.state));
  return out;
}

DensityMatrix mix(std::span<const DensityMatrix> states, std::span<const double> weights) {
  ComplexMatrix m = ComplexMatrix::Zero(states.front().dim(), states.front().dim());
  for (std::size_t i = 0; i < states.size(); ++i) m += weights[i] * states[i].matrix();
  return DensityMatrix(m);
}

std::vector<double> priors_of(const Ensemble& e) {
  std::vector<double> p;
  for (const auto& s : e.symbols()) p.push_back(s.prior);
  return p;
}

}  // namespace

double holevo_chi_entropy_form(const Ensemble& ensemble, const KrausChannel& channel) {
  require_input_dim(ensemble, channel);
  const auto outs = outputs(ensemble, channel);
  const auto p = priors_of(ensemble);
  double chi = von_neumann_entropy(mix(outs, p));
  for (std::size_t i = 0; i < outs.size(); ++i) {
    if (p[i] > 0.0) chi -= p[i] * von_neumann_entropy(outs[i]);
  }
  return std::max(chi, 0.0);
}

double holevo_chi_relent_form(const Ensemble& ensemble, const KrausChannel& channel) {
  require_input_dim(ensemble, channel);
  const auto outs = outputs(ensemble, channel);
  const auto p = priors_of(ensemble);
  const DensityMatrix avg = mix(outs, p);
  double chi = 0.0;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    if (p[i] == 0.0) continue;
    const ExtendedReal d = relative_entropy(outs[i], avg);
    if (d.is_infinite()) {
      throw NumericalError("holevo_chi_relent_form: output escapes the support of the average");
    }
    chi += p[i] * d.value();
  }
  return chi;
}

ReferenceDecomposition chi_reference_decomposition(const Ensemble& ensemble,
                                                   const KrausChannel& channel,
                                                   const DensityMatrix& reference) {
  require_input_dim(ensemble, channel);
  if (reference.dim() != channel.dim_in()) {
    throw ValidationError("chi_reference_decomposition: reference dimension mismatch");
  }
  const auto outs = outputs(ensemble, channel);
  const auto p = priors_of(ensemble);
  const DensityMatrix ref_out = apply(channel, reference);

  ReferenceDecomposition out;
  double term1 = 0.0;
  for (std::size_t i = 0; i < outs.size(); ++i) {
    if (p[i] == 0.0) continue;
    const ExtendedReal d = relative_entropy(outs[i], ref_out);
    if (d.is_infinite()) {
      out.support_mismatch = true;
      break;
    }
    term1 += p[i] * d.value();
  }
  if (out.support_mismatch) {
    out.average_divergence = ExtendedReal::infinity();
    out.mean_divergence = relative_entropy(mix(outs, p), ref_out);
    return out;
  }
  out.average_divergence = ExtendedReal::finite(term1);
  out.mean_divergence = relative_entropy(mix(outs, p), ref_out);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct LagrangianSolve {
  std::vector<double> prior;
  double chi = 0.0;
  double average_cost = 0.0;
  bool converged = false;
};

class CapacityCostSolver {
 public:
  CapacityCostSolver(std::vector<DensityMatrix> outs, std::vector<double> costs,
                     const CapacityCostOptions& options)
      : outs_(std::move(outs)), costs_(std::move(costs)), options_(options) {
    for (const auto& o : outs_) entropies_.push_back(von_neumann_entropy(o));
  }

  std::size_t size() const { return outs_.size(); }

  // D(sigma_x || rho_bar) for every symbol; ln rho_bar floored so that
  // symbols with vanishing prior get a large finite divergence.
  std::vector<double> divergences(const std::vector<double>& prior) const {
    const DensityMatrix avg = mix(outs_, prior);
    const SpectralDecomposition& s = avg.spectrum();
    Eigen::VectorXd log_q(s.dim());
    for (int j = 0; j < s.dim(); ++j) {
      log_q(j) = std::log(std::max(s.eigenvalues(j), std::numeric_limits<double>::min()));
    }
    std::vector<double> d(size());
    for (std::size_t x = 0; x < size(); ++x) {
      const ComplexMatrix rot = s.eigenvectors.adjoint() * outs_[x].matrix() * s.eigenvectors;
      double cross = 0.0;
      for (int j = 0; j < s.dim(); ++j) cross -= rot(j, j).real() * log_q(j);
      d[x] = std::max(cross - entropies_[x], 0.0);
    }
    return d;
  }

  double chi(const std::vector<double>& prior) const {
    double c = von_neumann_entropy(mix(outs_, prior));
    for (std::size_t x = 0; x < size(); ++x) c -= prior[x] * entropies_[x];
    return std::max(c, 0.0);
  }

  double cost(const std::vector<double>& prior) const {
    double c = 0.0;
    for (std::size_t x = 0; x < size(); ++x) c += prior[x] * costs_[x];
    return c;
  }

  // Maximizes chi - lambda <b> from the given interior starting prior. Stops
  // when the step is small and max_x (D_x - lambda b_x) exceeds the current
  // Lagrangian by at most gap_tolerance, which bounds the suboptimality.
  LagrangianSolve solve(double lambda, std::vector<double> prior) const {
    LagrangianSolve out;
    std::vector<double> logp(size());
    for (int it = 0; it < options_.max_iterations; ++it) {
      const std::vector<double> d = divergences(prior);
      double best = -std::numeric_limits<double>::infinity();
      double mean = 0.0;
      for (std::size_t x = 0; x < size(); ++x) {
        best = std::max(best, d[x] - lambda * costs_[x]);
        mean += prior[x] * (d[x] - lambda * costs_[x]);
      }
      const double gap = best - mean;
      double shift = -std::numeric_limits<double>::infinity();
      for (std::size_t x = 0; x < size(); ++x) {
        logp[x] = prior[x] > 0.0 ? std::log(prior[x]) + d[x] - lambda * costs_[x]
                                 : -std::numeric_limits<double>::infinity();
        shift = std::max(shift, logp[x]);
      }
      std::vector<double> next(size());
      double z = 0.0;
      for (std::size_t x = 0; x < size(); ++x) z += next[x] = std::exp(logp[x] - shift);
      double tv = 0.0;
      for (std::size_t x = 0; x < size(); ++x) {
        next[x] /= z;
        tv += 0.5 * std::abs(next[x] - prior[x]);
      }
      prior = std::move(next);
      if (tv < options_.tv_tolerance && gap <= options_.gap_tolerance) {
        out.converged = true;
        break;
      }
    }
    out.chi = chi(prior);
    out.average_cost = cost(prior);
    out.prior = std::move(prior);
    return out;
  }

 private:
  std::vector<DensityMatrix> outs_;
  std::vector<double> costs_;
  std::vector<double> entropies_;
  CapacityCostOptions options_;
};

}  // namespace

CapacityCostPoint capacity_cost(std::span<const CostedState> states, const KrausChannel& channel,
                                double beta, const CapacityCostOptions& options) {
  if (!(beta > 0.0)) throw DomainError("capacity_cost: beta must be positive");
  if (states.empty()) throw ValidationError("capacity_cost: empty state list");
  double min_cost = std::numeric_limits<double>::infinity();
  for (const auto& s : states) {
    if (!(s.cost >= 0.0)) throw ValidationError("capacity_cost: negative cost");
    if (s.state.dim() != channel.dim_in()) throw ValidationError("capacity_cost: dimension mismatch");
    min_cost = std::min(min_cost, s.cost);
  }
  if (min_cost > beta) {
    throw DomainError("capacity_cost: no prior satisfies the cost constraint (cheapest symbol costs " +
                      std::to_string(min_cost) + ")");
  }

  // Symbols costing exactly the budget with no cheaper alternative force the
  // prior onto the cheapest symbols.
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (min_cost < beta || states[i].cost <= beta) active.push_back(i);
  }
  std::vector<DensityMatrix> outs;
  std::vector<double> costs;
  for (std::size_t i : active) {
    outs.push_back(apply(channel, states[i].state));
    costs.push_back(states[i].cost);
  }
  const CapacityCostSolver solver(std::move(outs), std::move(costs), options);
  const std::vector<double> uniform(solver.size(), 1.0 / solver.size());
  // Warm starts keep every symbol alive: the multiplicative update cannot
  // revive a prior that has underflowed to zero.
  auto interior = [&](std::vector<double> p) {
    for (std::size_t x = 0; x < p.size(); ++x) p[x] = (1.0 - 1e-3) * p[x] + 1e-3 * uniform[x];
    return p;
  };

  auto finish = [&](const LagrangianSolve& s, double lambda) {
    CapacityCostPoint point;
    point.beta = beta;
    point.capacity = s.chi;
    point.average_cost = s.average_cost;
    point.multiplier = lambda;
    point.converged = s.converged;
    point.optimal_prior.assign(states.size(), 0.0);
    for (std::size_t k = 0; k < active.size(); ++k) point.optimal_prior[active[k]] = s.prior[k];
    return point;
  };

  LagrangianSolve free_solve = solver.solve(0.0, uniform);
  if (free_solve.average_cost <= beta) return finish(free_solve, 0.0);

  // Bracket the multiplier: cost(lambda) is nonincreasing in lambda.
  double lo = 0.0;
  double hi = 1.0;
  LagrangianSolve hi_solve = solver.solve(hi, interior(free_solve.prior));
  while (hi_solve.average_cost > beta) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) {
      throw NumericalError("capacity_cost: could not bracket the Lagrange multiplier");
    }
    hi_solve = solver.solve(hi, interior(hi_solve.prior));
  }
  std::vector<double> warm = interior(hi_solve.prior);
  for (int b = 0; b < options.max_bisections; ++b) {
    if (beta - hi_solve.average_cost <= 1e-13 * std::max(1.0, beta)) break;
    if (hi - lo <= 1e-15 * hi) break;
    const double mid = 0.5 * (lo + hi);
    LagrangianSolve mid_solve = solver.solve(mid, warm);
    warm = interior(mid_solve.prior);
    if (mid_solve.average_cost > beta) {
      lo = mid;
    } else {
      hi = mid;
      hi_solve = std::move(mid_solve);
    }
  }
  return finish(hi_solve, hi);
}

double binary_encoding_chi(const KrausChannel& channel, const DensityMatrix& rho,
                           const DensityMatrix& rho0, double cost, double beta) {
  if (!(cost > 0.0)) throw DomainError("binary_encoding_chi: signal cost must be positive");
  if (!(beta >= 0.0) || beta > cost) throw DomainError("binary_encoding_chi: need 0 <= beta <= b");
  const double p1 = beta / cost;
  if (p1 == 0.0 || p1 == 1.0) return 0.0;
  const Ensemble ens({EnsembleSymbol{1.0 - p1, rho0, 0.0}, EnsembleSymbol{p1, rho, cost}});
  return holevo_chi_entropy_form(ens, channel);
}

// ---------------------------------------------------------------------------

namespace {

enum class MemberKind { Excluded, SupportMismatch, ZeroCostDistinct, Ratio };

struct MemberEval {
  MemberKind kind = MemberKind::Excluded;
  double ratio = 0.0;
};

class RatioProblem {
 public:
  RatioProblem(const KrausChannel& channel, const ParamStateFamily& family,
               const CostFunction& cost, const CpucOptions& options)
      : channel_(channel),
        family_(family),
        cost_(cost),
        options_(options),
        free_(*family.free_point()),
        free_out_(apply(channel, family(*family.free_point()))) {}

  MemberEval evaluate(std::span<const double> x) const {
    double dist2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dist2 += (x[i] - free_[i]) * (x[i] - free_[i]);
    const DensityMatrix rho = family_(x);
    const DensityMatrix out = apply(channel_, rho);
    if (!support_contained(out, free_out_)) return {MemberKind::SupportMismatch, 0.0};
    if (std::sqrt(dist2) <= options_.exclusion_radius) return {MemberKind::Excluded, 0.0};
    const double b = cost_of_member(cost_, x, rho);
    const ExtendedReal d = relative_entropy(out, free_out_);
    if (b <= 1e-14) {
      return d.value() > 1e-12 ? MemberEval{MemberKind::ZeroCostDistinct, 0.0}
                               : MemberEval{MemberKind::Excluded, 0.0};
    }
    if (b < options_.min_resolved_cost) return {MemberKind::Excluded, 0.0};
    return {MemberKind::Ratio, d.value() / b};
  }

 private:
  const KrausChannel& channel_;
  const ParamStateFamily& family_;
  const CostFunction& cost_;
  CpucOptions options_;
  std::vector<double> free_;
  DensityMatrix free_out_;
};

}  // namespace

CpucResult capacity_per_unit_cost(const KrausChannel& channel, const ParamStateFamily& family,
                                  const CostFunction& cost, const CpucOptions& options) {
  if (!family.free_point()) {
    throw PreconditionError("capacity_per_unit_cost: family '" + family.name() +
                            "' declares no free point");
  }
  if (family.state_dim() != channel.dim_in()) {
    throw ValidationError("capacity_per_unit_cost: family and channel dimensions differ");
  }
  if (options.grid_points < 2) throw ValidationError("capacity_per_unit_cost: grid too coarse");
  {
    const double free_cost = cost_of_member(cost, *family.free_point(), family(*family.free_point()));
    if (free_cost > kCostTolerance) {
      throw PreconditionError("capacity_per_unit_cost: free point has nonzero cost");
    }
  }

  const RatioProblem problem(channel, family, cost, options);
  const auto grid = grid_points(family.box(), options.grid_points);
  std::vector<MemberEval> evals(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { evals[i] = problem.evaluate(grid[i]); });

  CpucResult result;
  result.evaluations = grid.size();

  // Infinite cases first, reported at the first offending grid node.
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (evals[i].kind == MemberKind::SupportMismatch) {
      result.value = ExtendedReal::infinity();
      result.witness = SupportMismatchWitness{grid[i]};
      return result;
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (evals[i].kind == MemberKind::ZeroCostDistinct) {
      result.value = ExtendedReal::infinity();
      result.witness = ZeroCostWitness{grid[i]};
      return result;
    }
  }

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (evals[i].kind == MemberKind::Ratio) order.push_back(i);
  }
  if (order.empty()) {
    result.value = ExtendedReal::finite(0.0);
    result.witness = MaximizerWitness{*family.free_point(), 0.0};
    return result;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return evals[a].ratio > evals[b].ratio;
  });
  const std::size_t starts = std::min<std::size_t>(order.size(), options.refine_starts);

  struct Refined {
    NelderMeadResult nm;
    std::optional<MemberEval> infinite;
    std::vector<double> infinite_at;
    std::size_t evaluations = 0;
  };
  std::vector<Refined> refined(starts);
  NelderMeadOptions nm_options;
  nm_options.initial_step = 1.0 / (options.grid_points - 1);
  nm_options.diameter_tol = options.diameter_tol;

  parallel_for(starts, [&](std::size_t s) {
    Refined& r = refined[s];
    auto objective = [&](std::span<const double> x) {
      ++r.evaluations;
      const MemberEval e = problem.evaluate(x);
      switch (e.kind) {
        case MemberKind::Ratio:
          return -e.ratio;
        case MemberKind::Excluded:
          return std::numeric_limits<double>::infinity();
        default:
          if (!r.infinite) {
            r.infinite = e;
            r.infinite_at.assign(x.begin(), x.end());
          }
          return std::numeric_limits<double>::infinity();
      }
    };
    r.nm = nelder_mead_minimize(objective, grid[order[s]], family.box(), nm_options);
  });

  double best = evals[order.front()].ratio;
  std::vector<double> best_x = grid[order.front()];
  bool converged = false;
  for (const auto& r : refined) {
    result.evaluations += r.evaluations;
    if (r.infinite) {
      result.value = ExtendedReal::infinity();
      if (r.infinite->kind == MemberKind::SupportMismatch) {
        result.witness = SupportMismatchWitness{r.infinite_at};
      } else {
        result.witness = ZeroCostWitness{r.infinite_at};
      }
      return result;
    }
    const double ratio = -r.nm.value;
    if (std::isfinite(ratio) && ratio > best) {
      best = ratio;
      best_x = r.nm.x;
      converged = r.nm.converged;
    }
  }
  if (best == evals[order.front()].ratio) {
    converged = std::any_of(refined.begin(), refined.end(),
                            [](const Refined& r) { return r.nm.converged; });
  }
  result.value = ExtendedReal::finite(best);
  result.witness = MaximizerWitness{best_x, best};
  result.converged = converged;
  return result;
}

}  // namespace qcpuc
