#include "qcpuc/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "qcpuc/errors.hpp"

namespace qcpuc {

unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CPUC_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

std::vector<std::vector<double>> grid_points(const ParameterBox& box, int points_per_dim) {
  if (points_per_dim < 2) throw ValidationError("grid_points: need at least 2 points per dimension");
  const int d = box.dim();
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(points_per_dim);
  std::vector<std::vector<double>> out;
  out.reserve(total);
  std::vector<int> idx(d, 0);
  for (std::size_t k = 0; k < total; ++k) {
    std::vector<double> x(d);
    for (int i = 0; i < d; ++i) {
      const double t = static_cast<double>(idx[i]) / (points_per_dim - 1);
      x[i] = box.lower[i] + t * (box.upper[i] - box.lower[i]);
    }
    out.push_back(std::move(x));
    for (int i = d - 1; i >= 0; --i) {
      if (++idx[i] < points_per_dim) break;
      idx[i] = 0;
    }
  }
  return out;
}

NelderMeadResult nelder_mead_minimize(const std::function<double(std::span<const double>)>& f,
                                      std::vector<double> start, const ParameterBox& box,
                                      const NelderMeadOptions& options) {
  const int n = box.dim();
  if (static_cast<int>(start.size()) != n) throw ValidationError("nelder_mead: start has wrong size");
  start = box.clamp(start);

  struct Vertex {
    std::vector<double> x;
    double f;
  };
  auto eval = [&](std::vector<double> x) {
    x = box.clamp(x);
    const double v = f(x);
    return Vertex{std::move(x), std::isnan(v) ? std::numeric_limits<double>::infinity() : v};
  };

  std::vector<Vertex> simplex;
  simplex.push_back(eval(start));
  for (int i = 0; i < n; ++i) {
    std::vector<double> x = start;
    const double width = box.upper[i] - box.lower[i];
    double step = options.initial_step * (width > 0 ? width : 1.0);
    // Step inward when the start sits on the upper bound.
    if (x[i] + step > box.upper[i]) step = -step;
    x[i] += step;
    simplex.push_back(eval(x));
  }

  auto diameter = [&] {
    double d = 0.0;
    for (std::size_t i = 1; i < simplex.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) {
          const double dx = simplex[i].x[k] - simplex[j].x[k];
          s += dx * dx;
        }
        d = std::max(d, std::sqrt(s));
      }
    }
    return d;
  };

  NelderMeadResult result;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    if (diameter() < options.diameter_tol) {
      result.converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) centroid[k] += simplex[i].x[k] / n;
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (int k = 0; k < n; ++k) x[k] = centroid[k] + t * (simplex[n].x[k] - centroid[k]);
      return eval(std::move(x));
    };
    Vertex reflected = along(-1.0);
    if (reflected.f < simplex[0].f) {
      Vertex expanded = along(-2.0);
      simplex[n] = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
    } else if (reflected.f < simplex[n - 1].f) {
      simplex[n] = std::move(reflected);
    } else {
      Vertex contracted = reflected.f < simplex[n].f ? along(-0.5) : along(0.5);
      if (contracted.f < std::min(reflected.f, simplex[n].f)) {
        simplex[n] = std::move(contracted);
      } else {
        for (int i = 1; i <= n; ++i) {
          std::vector<double> x(n);
          for (int k = 0; k < n; ++k) x[k] = 0.5 * (simplex[0].x[k] + simplex[i].x[k]);
          simplex[i] = eval(std::move(x));
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(),
            [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  result.x = simplex[0].x;
  result.value = simplex[0].f;
  result.iterations = it;
  return result;
}

}  // namespace qcpuc
