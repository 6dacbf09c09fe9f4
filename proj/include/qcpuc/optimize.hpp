#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qcpuc/family.hpp"

namespace qcpuc {

/// Worker count: hardware concurrency capped by the CPUC_THREADS environment
/// variable when it holds a positive integer.
unsigned worker_count();

/// Runs body(i) for i in [0, n) over worker_count() threads. Each index is
/// visited exactly once; the first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Tensor grid with `points_per_dim` equally spaced nodes (bounds included)
/// per coordinate, last coordinate fastest.
std::vector<std::vector<double>> grid_points(const ParameterBox& box, int points_per_dim);

struct NelderMeadOptions {
  double initial_step = 0.05;  // relative to each box width
  double diameter_tol = 1e-8;
  int max_iterations = 20000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Box-constrained Nelder-Mead minimization; trial points are clamped into
/// the box. Converged when the simplex diameter drops below diameter_tol.
/// The objective may return +inf to reject a point.
NelderMeadResult nelder_mead_minimize(const std::function<double(std::span<const double>)>& f,
                                      std::vector<double> start, const ParameterBox& box,
                                      const NelderMeadOptions& options = {});

}  // namespace qcpuc
