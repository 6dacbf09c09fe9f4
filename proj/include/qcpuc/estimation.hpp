#pragma once

#include <optional>

#include "qcpuc/capacity.hpp"

namespace qcpuc {

/// Relative-entropy quantum Fisher information J of a one-parameter family
/// at x0: the second-order coefficient in D(rho_{x0+d} || rho_{x0}) = d^2 J / 2.
///
/// In the eigenbasis rho = sum p_n |n><n| and with rho' the family
/// derivative,
///   J = sum_{n,k} |rho'_nk|^2 (ln p_n - ln p_k) / (p_n - p_k),
/// the diagonal (and degenerate) terms being |rho'_nn|^2 / p_n. This is the
/// eigenvector-derivative expression sum p'^2/p + 2 sum (p_n - p_k)|<n|k'>|^2 ln p_n
/// after substituting <n|k'> = rho'_nk / (p_k - p_n). Infinite when rho' has
/// weight outside supp(rho_{x0}).
ExtendedReal reqfi(const ParamStateFamily& family, double x0);

/// SLD quantum Fisher information F = sum 2 |rho'_nk|^2 / (p_n + p_k), terms
/// with p_n + p_k <= 1e-12 dropped.
double qfi(const ParamStateFamily& family, double x0);

/// Both informations from one derivative evaluation.
struct FisherPair {
  ExtendedReal reqfi;
  double qfi = 0.0;
};
FisherPair fisher_informations(const ParamStateFamily& family, double x0);

/// (ln a - ln b) / (a - b), continuous at a = b.
double log_mean_inverse(double a, double b);

struct EstimationBounds {
  ExtendedReal j_half;   // J/2
  double f_half = 0.0;   // F/2
  ExtendedReal inv_j;    // 1/J, upper bound on the minimal energy E_min
  ExtendedReal inv_f;    // 1/F >= 1/J
  bool vacuous = false;  // J = F = 0: no information at first order
  std::optional<CpucResult> cpuc;
  bool chain_holds = true;  // C >= J/2 >= F/2 (when C was computed)
};

/// Estimation-theoretic bounds for a scalar family with quadratic cost x^2 and
/// free point x = 0, pushed through `channel`. When `compute_cpuc` is set the
/// capacity per unit cost is evaluated as well and the ordering checked.
EstimationBounds estimation_bounds_report(const KrausChannel& channel,
                                          const ParamStateFamily& family,
                                          const CostFunction& cost, bool compute_cpuc = true,
                                          const CpucOptions& options = {});

}  // namespace qcpuc
