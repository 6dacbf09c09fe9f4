#include "qcpuc/channels.hpp"

#include <cmath>
#include <string>

#include "qcpuc/errors.hpp"

namespace qcpuc {

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus_ops) : ops_(std::move(kraus_ops)) {
  if (ops_.empty()) throw ValidationError("KrausChannel: empty operator list");
  dim_out_ = static_cast<int>(ops_.front().rows());
  dim_in_ = static_cast<int>(ops_.front().cols());
  if (dim_in_ == 0 || dim_out_ == 0) throw ValidationError("KrausChannel: empty operator");
  for (const auto& k : ops_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) {
      throw ValidationError("KrausChannel: inconsistent operator shapes");
    }
  }
}

ComplexMatrix KrausChannel::apply_raw(const ComplexMatrix& rho) const {
  if (rho.rows() != dim_in_ || rho.cols() != dim_in_) {
    throw ValidationError("KrausChannel: input dimension " + std::to_string(rho.rows()) +
                          " does not match dim_in " + std::to_string(dim_in_));
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_out_, dim_out_);
  for (const auto& k : ops_) out.noalias() += k * rho * k.adjoint();
  return out;
}

KrausCheck validate_kraus(const KrausChannel& channel, double tol) {
  ComplexMatrix sum = ComplexMatrix::Zero(channel.dim_in(), channel.dim_in());
  for (const auto& k : channel.kraus_ops()) sum.noalias() += k.adjoint() * k;
  sum -= ComplexMatrix::Identity(channel.dim_in(), channel.dim_in());
  KrausCheck check;
  check.max_deviation = sum.cwiseAbs().maxCoeff();
  check.complete = check.max_deviation <= tol;
  return check;
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho) {
  return DensityMatrix(channel.apply_raw(rho.matrix()));
}

KrausChannel identity_channel(int dim) {
  return KrausChannel({ComplexMatrix::Identity(dim, dim)});
}

KrausChannel completely_depolarizing_channel(int dim) {
  // K_ij = |i><j| / sqrt(d).
  std::vector<ComplexMatrix> ops;
  const double s = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      ComplexMatrix k = ComplexMatrix::Zero(dim, dim);
      k(i, j) = s;
      ops.push_back(std::move(k));
    }
  }
  return KrausChannel(std::move(ops));
}

KrausChannel amplitude_damping_channel(double decay) {
  if (!(decay >= 0.0 && decay <= 1.0)) throw DomainError("amplitude damping: decay not in [0,1]");
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - decay);
  k1(0, 1) = std::sqrt(decay);
  return KrausChannel({k0, k1});
}

KrausChannel generalized_amplitude_damping_channel(double decay, double p) {
  if (!(decay >= 0.0 && decay <= 1.0)) throw DomainError("GAD: decay not in [0,1]");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("GAD: p not in [0,1]");
  const double a = std::sqrt(p);
  const double b = std::sqrt(1.0 - p);
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix k2 = ComplexMatrix::Zero(2, 2);
  ComplexMatrix k3 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = a;
  k0(1, 1) = a * std::sqrt(1.0 - decay);
  k1(0, 1) = a * std::sqrt(decay);
  k2(0, 0) = b * std::sqrt(1.0 - decay);
  k2(1, 1) = b;
  k3(1, 0) = b * std::sqrt(decay);
  return KrausChannel({k0, k1, k2, k3});
}

}  // namespace qcpuc
