#pragma once

#include <span>
#include <variant>
#include <vector>

#include "qcpuc/channels.hpp"
#include "qcpuc/family.hpp"

namespace qcpuc {

struct EnsembleSymbol {
  double prior;
  DensityMatrix state;
  double cost = 0.0;
};

/// Prior-weighted states with per-symbol costs. Priors lie in [0,1] and sum
/// to one within 1e-12; all states share a dimension; costs are nonnegative.
class Ensemble {
 public:
  explicit Ensemble(std::vector<EnsembleSymbol> symbols);

  std::size_t size() const { return symbols_.size(); }
  int dim() const { return symbols_.front().state.dim(); }
  const std::vector<EnsembleSymbol>& symbols() const { return symbols_; }

  /// rho_bar = sum p_x rho_x.
  DensityMatrix average_state() const;
  double average_cost() const;

 private:
  std::vector<EnsembleSymbol> symbols_;
};

/// I(X;Y) = H(Y) - H(Y|X) in nats for prior p(x) and rows p(y|x).
double mutual_information(std::span<const double> prior, const Eigen::MatrixXd& conditional);

/// chi = S(sum p Lambda[rho_x]) - sum p S(Lambda[rho_x]).
double holevo_chi_entropy_form(const Ensemble& ensemble, const KrausChannel& channel);

/// chi = sum p D(Lambda[rho_x] || Lambda[rho_bar]).
double holevo_chi_relent_form(const Ensemble& ensemble, const KrausChannel& channel);

struct ReferenceDecomposition {
  ExtendedReal average_divergence;  // sum p D(Lambda rho_x || Lambda rho_ref)
  ExtendedReal mean_divergence;     // D(Lambda rho_bar || Lambda rho_ref)
  bool support_mismatch = false;    // some output escapes supp(Lambda rho_ref)
};

/// Holevo information split around a reference state: when finite,
/// average_divergence - mean_divergence = chi.
ReferenceDecomposition chi_reference_decomposition(const Ensemble& ensemble,
                                                   const KrausChannel& channel,
                                                   const DensityMatrix& reference);

// ---------------------------------------------------------------------------
// Capacity-cost function over priors on a fixed state set.

struct CostedState {
  DensityMatrix state;
  double cost;
};

struct CapacityCostOptions {
  double tv_tolerance = 1e-10;
  double gap_tolerance = 1e-10;  // bound on chi - lambda <b> below its maximum
  int max_iterations = 10000;  // per multiplier value
  int max_bisections = 100;
};

struct CapacityCostPoint {
  double beta = 0.0;
  double capacity = 0.0;  // nats
  std::vector<double> optimal_prior;
  double average_cost = 0.0;
  double multiplier = 0.0;  // Lagrange multiplier of the cost constraint
  bool converged = true;
};

/// max chi over priors with sum p_x b_x <= beta. For a fixed multiplier the
/// Lagrangian chi - lambda <b> is maximized by the multiplicative fixed point
/// p_x <- p_x exp(D(Lambda rho_x || Lambda rho_bar) - lambda b_x) / Z; the
/// multiplier is bisected until the constraint is met.
CapacityCostPoint capacity_cost(std::span<const CostedState> states, const KrausChannel& channel,
                                double beta, const CapacityCostOptions& options = {});

/// chi of the two-symbol ensemble {1 - beta/b: rho0, beta/b: rho}.
double binary_encoding_chi(const KrausChannel& channel, const DensityMatrix& rho,
                           const DensityMatrix& rho0, double cost, double beta);

// ---------------------------------------------------------------------------
// Capacity per unit cost with a free symbol.

struct SupportMismatchWitness {
  std::vector<double> parameter;
};

/// A second zero-cost member whose output differs from the free output.
struct ZeroCostWitness {
  std::vector<double> parameter;
};

struct MaximizerWitness {
  std::vector<double> parameter;
  double ratio = 0.0;
};

using CpucWitness = std::variant<SupportMismatchWitness, ZeroCostWitness, MaximizerWitness>;

struct CpucOptions {
  int grid_points = 33;  // per parameter dimension
  int refine_starts = 5;
  double exclusion_radius = 1e-6;
  double diameter_tol = 1e-8;
  /// Members cheaper than this (but not free) are skipped: D/b loses
  /// precision like 1e-16/b as b -> 0.
  double min_resolved_cost = 1e-6;
};

struct CpucResult {
  ExtendedReal value;
  CpucWitness witness;
  bool converged = true;
  std::size_t evaluations = 0;
};

/// sup over family members x != free point of D(Lambda rho_x || Lambda rho_0) / b[x].
/// Support mismatches are scanned for on the grid before any optimization.
CpucResult capacity_per_unit_cost(const KrausChannel& channel, const ParamStateFamily& family,
                                  const CostFunction& cost, const CpucOptions& options = {});

}  // namespace qcpuc
