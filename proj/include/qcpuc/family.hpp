#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qcpuc/channels.hpp"

namespace qcpuc {

/// Axis-aligned parameter domain.
struct ParameterBox {
  std::vector<double> lower;
  std::vector<double> upper;

  int dim() const { return static_cast<int>(lower.size()); }
  bool contains(std::span<const double> x) const;
  std::vector<double> clamp(std::span<const double> x) const;
};

/// Continuous family of states x -> rho_x over a box of parameters.
///
/// The map must return a valid state everywhere on the box. When a free
/// point is declared it is the zero-cost symbol rho_0.
class ParamStateFamily {
 public:
  using Map = std::function<DensityMatrix(std::span<const double>)>;

  ParamStateFamily(std::string name, int state_dim, ParameterBox box, Map map,
                   std::optional<std::vector<double>> free_point = std::nullopt);

  const std::string& name() const { return name_; }
  int param_dim() const { return box_.dim(); }
  int state_dim() const { return state_dim_; }
  const ParameterBox& box() const { return box_; }
  const std::optional<std::vector<double>>& free_point() const { return free_point_; }

  /// Evaluates the map; throws ValidationError on a parameter of the wrong
  /// length or a state of the wrong dimension.
  DensityMatrix operator()(std::span<const double> x) const;
  DensityMatrix at(double x) const { return (*this)(std::span<const double>(&x, 1)); }

  /// The family pushed through a channel: x -> Lambda[rho_x].
  ParamStateFamily through(const KrausChannel& channel) const;

 private:
  std::string name_;
  int state_dim_;
  ParameterBox box_;
  Map map_;
  std::optional<std::vector<double>> free_point_;
};

/// Step used for family derivatives.
inline constexpr double kFamilyDerivativeStep = 1e-5;

/// d rho / d x_coord at x by Richardson-extrapolated finite differences
/// (steps h and h/2). Central stencils in the interior of the box, one-sided
/// second-order stencils within 2h of a bound.
ComplexMatrix family_derivative(const ParamStateFamily& family, std::span<const double> x,
                                int coord = 0, double h = kFamilyDerivativeStep);

/// Qubit states over the box [-1,1]^3; a parameter v maps to the Bloch
/// vector v (radially projected onto the unit ball when |v| > 1).
ParamStateFamily bloch_family(std::optional<std::vector<double>> free_bloch_vector);

/// One-parameter qubit curve r(x) = r0 + x v + x^2 w for x in [-range, range],
/// projected onto the unit ball; free point x = 0.
ParamStateFamily bloch_curve_family(const Eigen::Vector3d& r0, const Eigen::Vector3d& v,
                                    const Eigen::Vector3d& w, double range);

/// (1 - theta) rho0 + theta rho1 for theta in [0, 1]; free point theta = 0.
ParamStateFamily mixture_family(const DensityMatrix& rho0, const DensityMatrix& rho1);

/// Qubit state with the given Bloch vector (|r| <= 1 + 1e-12).
DensityMatrix bloch_state(const Eigen::Vector3d& r);

// ---------------------------------------------------------------------------
// Costs

/// cost = Re Tr(B rho) for a Hermitian observable B.
struct ObservableCost {
  ComplexMatrix observable;
};

/// cost = |x|^2 for the family parameter x.
struct QuadraticCost {};

/// Explicit per-symbol costs.
struct LookupCost {
  std::vector<double> costs;
};

using CostFunction = std::variant<ObservableCost, QuadraticCost, LookupCost>;

/// Photon number diag(0, 1, ..., dim-1).
ObservableCost photon_number_cost(int dim);

inline constexpr double kCostTolerance = 1e-9;

/// Observable cost of a state. Values in [-1e-9, 0) are clipped to zero,
/// more negative values throw DomainError.
double cost_of(const CostFunction& cost, const DensityMatrix& rho);
/// Quadratic cost of a parameter.
double cost_of(const CostFunction& cost, std::span<const double> x);
/// Lookup cost of a symbol index.
double cost_of(const CostFunction& cost, std::size_t symbol);

/// Cost of family member x (state rho_x), dispatching on the cost kind;
/// lookup costs have no meaning here and throw PreconditionError.
double cost_of_member(const CostFunction& cost, std::span<const double> x,
                      const DensityMatrix& rho_x);

}  // namespace qcpuc
