#include "qcpuc/family.hpp"

#include <algorithm>
#include <cmath>

#include "qcpuc/errors.hpp"

namespace qcpuc {

bool ParameterBox::contains(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  }
  return true;
}

std::vector<double> ParameterBox::clamp(std::span<const double> x) const {
  std::vector<double> out(x.begin(), x.end());
  for (int i = 0; i < dim(); ++i) out[i] = std::clamp(out[i], lower[i], upper[i]);
  return out;
}

ParamStateFamily::ParamStateFamily(std::string name, int state_dim, ParameterBox box, Map map,
                                   std::optional<std::vector<double>> free_point)
    : name_(std::move(name)),
      state_dim_(state_dim),
      box_(std::move(box)),
      map_(std::move(map)),
      free_point_(std::move(free_point)) {
  if (box_.lower.size() != box_.upper.size() || box_.lower.empty()) {
    throw ValidationError("ParamStateFamily: malformed parameter box");
  }
  for (int i = 0; i < box_.dim(); ++i) {
    if (!(box_.lower[i] <= box_.upper[i])) {
      throw ValidationError("ParamStateFamily: box lower bound exceeds upper bound");
    }
  }
  if (free_point_ && !box_.contains(*free_point_)) {
    throw ValidationError("ParamStateFamily: free point outside the parameter box");
  }
}

DensityMatrix ParamStateFamily::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != param_dim()) {
    throw ValidationError("ParamStateFamily '" + name_ + "': expected " +
                          std::to_string(param_dim()) + " parameters");
  }
  DensityMatrix rho = map_(x);
  if (rho.dim() != state_dim_) {
    throw ValidationError("ParamStateFamily '" + name_ + "': map returned wrong dimension");
  }
  return rho;
}

ParamStateFamily ParamStateFamily::through(const KrausChannel& channel) const {
  if (channel.dim_in() != state_dim_) {
    throw ValidationError("ParamStateFamily::through: channel input dimension mismatch");
  }
  Map inner = map_;
  Map composed = [inner, channel](std::span<const double> x) {
    return apply(channel, inner(x));
  };
  return ParamStateFamily(name_ + "|channel", channel.dim_out(), box_, std::move(composed),
                          free_point_);
}

ComplexMatrix family_derivative(const ParamStateFamily& family, std::span<const double> x,
                                int coord, double h) {
  if (coord < 0 || coord >= family.param_dim()) {
    throw ValidationError("family_derivative: coordinate out of range");
  }
  const double lo = family.box().lower[coord];
  const double hi = family.box().upper[coord];
  std::vector<double> y(x.begin(), x.end());
  const double x0 = y[coord];
  auto eval = [&](double t) {
    y[coord] = t;
    ComplexMatrix m = family(y).matrix();
    y[coord] = x0;
    return m;
  };

  // First-derivative estimate with step s; truncation error O(s^2).
  std::function<ComplexMatrix(double)> estimate;
  if (x0 - 2 * h >= lo && x0 + 2 * h <= hi) {
    estimate = [&](double s) -> ComplexMatrix { return (eval(x0 + s) - eval(x0 - s)) / (2 * s); };
  } else if (x0 + 4 * h <= hi) {
    const ComplexMatrix f0 = eval(x0);
    estimate = [&, f0](double s) -> ComplexMatrix {
      return (-3.0 * f0 + 4.0 * eval(x0 + s) - eval(x0 + 2 * s)) / (2 * s);
    };
  } else if (x0 - 4 * h >= lo) {
    const ComplexMatrix f0 = eval(x0);
    estimate = [&, f0](double s) -> ComplexMatrix {
      return (3.0 * f0 - 4.0 * eval(x0 - s) + eval(x0 - 2 * s)) / (2 * s);
    };
  } else {
    throw PreconditionError("family_derivative: parameter box narrower than the stencil");
  }
  const ComplexMatrix coarse = estimate(h);
  const ComplexMatrix fine = estimate(h / 2);
  return hermitian_part((4.0 * fine - coarse) / 3.0);
}

DensityMatrix bloch_state(const Eigen::Vector3d& r) {
  const double n = r.norm();
  if (n > 1.0 + 1e-12) throw ValidationError("bloch_state: |r| > 1");
  const Eigen::Vector3d u = n > 1.0 ? Eigen::Vector3d(r / n) : r;
  ComplexMatrix m(2, 2);
  m(0, 0) = 0.5 * (1.0 + u.z());
  m(1, 1) = 0.5 * (1.0 - u.z());
  m(0, 1) = 0.5 * Complex(u.x(), -u.y());
  m(1, 0) = 0.5 * Complex(u.x(), u.y());
  return DensityMatrix(m);
}

namespace {

Eigen::Vector3d project_to_ball(const Eigen::Vector3d& v) {
  const double n = v.norm();
  return n > 1.0 ? Eigen::Vector3d(v / n) : v;
}

}  // namespace

ParamStateFamily bloch_family(std::optional<std::vector<double>> free_bloch_vector) {
  if (free_bloch_vector && free_bloch_vector->size() != 3) {
    throw ValidationError("bloch_family: free point must have 3 coordinates");
  }
  ParameterBox box{{-1.0, -1.0, -1.0}, {1.0, 1.0, 1.0}};
  auto map = [](std::span<const double> x) {
    return bloch_state(project_to_ball(Eigen::Vector3d(x[0], x[1], x[2])));
  };
  return ParamStateFamily("bloch", 2, std::move(box), map, std::move(free_bloch_vector));
}

ParamStateFamily bloch_curve_family(const Eigen::Vector3d& r0, const Eigen::Vector3d& v,
                                    const Eigen::Vector3d& w, double range) {
  if (!(range > 0)) throw ValidationError("bloch_curve_family: range must be positive");
  auto map = [r0, v, w](std::span<const double> x) {
    const double t = x[0];
    return bloch_state(project_to_ball(r0 + t * v + t * t * w));
  };
  return ParamStateFamily("bloch-curve", 2, ParameterBox{{-range}, {range}}, map,
                          std::vector<double>{0.0});
}

ParamStateFamily mixture_family(const DensityMatrix& rho0, const DensityMatrix& rho1) {
  if (rho0.dim() != rho1.dim()) throw ValidationError("mixture_family: dimension mismatch");
  const ComplexMatrix a = rho0.matrix();
  const ComplexMatrix b = rho1.matrix();
  auto map = [a, b](std::span<const double> x) {
    const double t = x[0];
    return DensityMatrix((1.0 - t) * a + t * b);
  };
  return ParamStateFamily("mixture", rho0.dim(), ParameterBox{{0.0}, {1.0}}, map,
                          std::vector<double>{0.0});
}

ObservableCost photon_number_cost(int dim) {
  ComplexMatrix b = ComplexMatrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) b(n, n) = static_cast<double>(n);
  return ObservableCost{b};
}

namespace {

double check_nonnegative(double c, const char* what) {
  if (c < -kCostTolerance || std::isnan(c)) {
    throw DomainError(std::string(what) + ": negative cost " + std::to_string(c));
  }
  return std::max(c, 0.0);
}

}  // namespace

double cost_of(const CostFunction& cost, const DensityMatrix& rho) {
  const auto* obs = std::get_if<ObservableCost>(&cost);
  if (!obs) throw PreconditionError("cost_of(state): cost is not an observable expectation");
  if (obs->observable.rows() != rho.dim() || obs->observable.cols() != rho.dim()) {
    throw ValidationError("cost_of: observable dimension does not match the state");
  }
  const double c = (obs->observable * rho.matrix()).trace().real();
  return check_nonnegative(c, "cost_of");
}

double cost_of(const CostFunction& cost, std::span<const double> x) {
  if (!std::holds_alternative<QuadraticCost>(cost)) {
    throw PreconditionError("cost_of(parameter): cost is not quadratic in the parameter");
  }
  double c = 0.0;
  for (double xi : x) c += xi * xi;
  return c;
}

double cost_of(const CostFunction& cost, std::size_t symbol) {
  const auto* table = std::get_if<LookupCost>(&cost);
  if (!table) throw PreconditionError("cost_of(symbol): cost is not a lookup table");
  if (symbol >= table->costs.size()) throw ValidationError("cost_of: symbol index out of range");
  return check_nonnegative(table->costs[symbol], "cost_of");
}

double cost_of_member(const CostFunction& cost, std::span<const double> x,
                      const DensityMatrix& rho_x) {
  if (std::holds_alternative<ObservableCost>(cost)) return cost_of(cost, rho_x);
  if (std::holds_alternative<QuadraticCost>(cost)) return cost_of(cost, x);
  throw PreconditionError("lookup costs apply to discrete symbols, not to a continuous family");
}

}  // namespace qcpuc
