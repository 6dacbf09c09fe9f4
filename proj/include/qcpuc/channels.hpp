#pragma once

#include <vector>

#include "qcpuc/quantum.hpp"

namespace qcpuc {

/// Completely positive map rho -> sum_k K_k rho K_k^dagger.
///
/// Construction only checks shapes so that trace-decreasing operator sets can
/// still be inspected with validate_kraus(); loaders and callers that need a
/// channel should check completeness first.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> kraus_ops);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus_ops() const { return ops_; }

  /// sum_k K rho K^dagger without validation of the result.
  ComplexMatrix apply_raw(const ComplexMatrix& rho) const;

 private:
  int dim_in_ = 0;
  int dim_out_ = 0;
  std::vector<ComplexMatrix> ops_;
};

struct KrausCheck {
  bool complete = false;
  double max_deviation = 0.0;  // max |sum K^dagger K - I| entry
};

inline constexpr double kKrausTolerance = 1e-9;

KrausCheck validate_kraus(const KrausChannel& channel, double tol = kKrausTolerance);

/// Lambda[rho]; the output is revalidated as a density matrix.
DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);

KrausChannel identity_channel(int dim);

/// rho -> Tr(rho) I/d.
KrausChannel completely_depolarizing_channel(int dim);

/// Qubit decay |1> -> |0> with probability `decay`.
KrausChannel amplitude_damping_channel(double decay);

/// Qubit relaxation toward diag(p, 1-p) at rate `decay`; for 0 < decay and
/// p < 1 the image of |0><0| is full rank.
KrausChannel generalized_amplitude_damping_channel(double decay, double p);

}  // namespace qcpuc
