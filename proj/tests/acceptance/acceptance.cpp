#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "qcpuc/capacity.hpp"
#include "qcpuc/channels.hpp"
#include "qcpuc/errors.hpp"
#include "qcpuc/estimation.hpp"
#include "qcpuc/family.hpp"
#include "qcpuc/fock.hpp"
#include "qcpuc/gaussian.hpp"
#include "qcpuc/random.hpp"

using namespace qcpuc;
using gaussian::FiducialChannel;
using gaussian::GaussianParams;

namespace {

struct Verdict {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(double x, const char* pattern = "%.9g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

// Thermal channel: cpuc equals |eta| ln((N0 + 1)/N0) with N0 = 0.1.
Verdict ac1() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const FiducialChannel ch{0.9, 1.0, 1.0};
  const ExtendedReal c = gaussian::cpuc_gaussian(ch);
  const gaussian::OutputParams vac = gaussian::vacuum_output_params(ch);
  const double expected = 0.9 * std::log(1.1 / 0.1);
  v.require(std::abs(vac.n_thermal - 0.1) <= 1e-12, "N0 = 0.1");
  v.require(c.is_finite() && std::abs(c.value() - expected) <= 1e-6, "C = 0.9 ln 11 within 1e-6");
  const std::vector<double> grid{1e-6};
  const double pie = gaussian::pie_curve(ch, grid).front().pie;
  v.require(std::abs(pie - c.value()) <= 1e-4, "PIE(1e-6) within 1e-4 of C");
  const double t = seconds_since(t0);
  v.require(t < 1.0, "runtime < 1 s");
  v.note("C = " + fmt(c.value()) + " nats/photon (0.9 ln 11 = " + fmt(expected) + ")");
  v.note("PIE(1e-6) = " + fmt(pie));
  v.note("runtime " + fmt(t, "%.3f") + " s");
  return v;
}

// Lossy channels: infinite cpuc, PIE strictly increasing as nbar decreases.
Verdict ac2() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> grid = log_grid(1e-6, 1.0, 61);
  for (double eta : {0.5, 0.9}) {
    const FiducialChannel ch{eta, 0.0, 1.0};
    v.require(gaussian::cpuc_gaussian(ch).is_infinite(), "cpuc = inf at eta = " + fmt(eta));
    v.require(gaussian::classify(ch) == gaussian::ChannelClass::Lossy, "lossy class at eta = " + fmt(eta));
    const std::vector<gaussian::PiePoint> pts = gaussian::pie_curve(ch, grid);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (!(pts[i - 1].pie > pts[i].pie)) {
        v.require(false, "PIE strictly decreasing in nbar at eta = " + fmt(eta) + ", nbar = " + fmt(pts[i].nbar));
        break;
      }
    }
    v.note("eta " + fmt(eta) + ": PIE(1e-6) = " + fmt(pts.front().pie) + ", PIE(1) = " + fmt(pts.back().pie));
  }
  const double t = seconds_since(t0);
  v.require(t < 1.0, "runtime < 1 s");
  v.note("runtime " + fmt(t, "%.3f") + " s");
  return v;
}

// Phase-space relative entropy against the Fock-space oracle.
Verdict ac3() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const fock::TruncationConfig cfg;
  int compared = 0;
  int skipped = 0;
  double max_err = 0.0;
  for (int draw = 0; compared < 60 && draw < 10000; ++draw) {
    FiducialChannel ch{-2.0 + 4.0 * u(rng), 1.5 * u(rng), 0.5 + 1.5 * u(rng)};
    GaussianParams in{u(rng), 0.6 + u(rng), std::polar(u(rng), 2 * std::numbers::pi * u(rng))};
    if (ch.eta == 0.0) continue;
    try {
      ch.validate();
    } catch (const ValidationError&) {
      continue;
    }
    const GaussianParams out = gaussian::output_gaussian_params(ch, in);
    const GaussianParams vac = gaussian::output_gaussian_params(ch, GaussianParams::vacuum());
    ExtendedReal oracle;
    try {
      oracle = fock::oracle_relative_entropy(out, vac, cfg);
    } catch (const NumericalError&) {
      ++skipped;
      continue;
    }
    const ExtendedReal closed =
        gaussian::gaussian_relative_entropy(gaussian::from_params(out), gaussian::from_params(vac));
    if (oracle.is_infinite() || closed.is_infinite()) {
      v.require(oracle == closed, "matching infinite branch");
    } else {
      max_err = std::max(max_err, std::abs(closed.value() - oracle.value()));
    }
    ++compared;
  }
  const double t = seconds_since(t0);
  v.require(compared >= 50, ">= 50 compared samples");
  v.require(max_err <= 1e-5, "max error <= 1e-5");
  v.require(t < 60.0, "runtime < 60 s");
  v.note(std::to_string(compared) + " samples, " + std::to_string(skipped) + " skipped for tail, max error " +
         fmt(max_err, "%.2e") + ", runtime " + fmt(t, "%.2f") + " s");
  return v;
}

// Holevo information: entropy form equals relative-entropy form.
Verdict ac4() {
  Verdict v;
  Rng rng(4242);
  std::uniform_int_distribution<int> dim_dist(1, 4);
  std::uniform_int_distribution<int> sym_dist(1, 6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double max_err = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int din = dim_dist(rng);
    const int dout = dim_dist(rng);
    const int n = sym_dist(rng);
    std::vector<double> w(n);
    double total = 0.0;
    for (double& x : w) total += (x = u(rng) + 1e-3);
    std::vector<EnsembleSymbol> symbols;
    for (int k = 0; k < n; ++k) symbols.push_back({w[k] / total, random_density_matrix(din, rng, 1 + trial % din), 0.0});
    const Ensemble e(std::move(symbols));
    const int min_kraus = (din + dout - 1) / dout;
    const KrausChannel ch = random_channel(din, dout, min_kraus + trial % 3, rng);
    max_err = std::max(max_err, std::abs(holevo_chi_entropy_form(e, ch) - holevo_chi_relent_form(e, ch)));
  }
  v.require(max_err <= 1e-9, "max discrepancy <= 1e-9");
  v.note("200 ensembles, max discrepancy " + fmt(max_err, "%.2e"));
  return v;
}

struct QubitCurve {
  ParamStateFamily family;
  double x0;
};

// Full-rank qubit curves r(x) = r0 + x v + x^2 w with |r| <= 0.9 on [-1, 1].
std::vector<QubitCurve> random_qubit_curves(int count, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<QubitCurve> out;
  while (static_cast<int>(out.size()) < count) {
    Eigen::Vector3d r0(g(rng), g(rng), g(rng));
    r0 *= 0.5 * std::abs(u(rng)) / r0.norm() + 0.1 / r0.norm();
    Eigen::Vector3d vv(g(rng), g(rng), g(rng));
    vv *= 0.2 / vv.norm();
    Eigen::Vector3d ww(g(rng), g(rng), g(rng));
    ww *= 0.05 / ww.norm();
    if (r0.norm() + vv.norm() + ww.norm() > 0.9) continue;
    out.push_back({bloch_curve_family(r0, vv, ww, 1.0), u(rng)});
  }
  return out;
}

// Relative-entropy Fisher information against finite differences and the
// binary-encoding expansion.
Verdict ac5() {
  Verdict v;
  Rng rng(555);
  const std::vector<QubitCurve> curves = random_qubit_curves(20, rng);
  const KrausChannel id = identity_channel(2);
  double worst_ratio = 0.0;
  double worst_fit = 0.0;
  for (const QubitCurve& c : curves) {
    const ExtendedReal j = reqfi(c.family, c.x0);
    v.require(j.is_finite(), "finite J on full-rank family");
    if (!j.is_finite()) continue;
    const DensityMatrix rho0 = c.family.at(c.x0);
    double err[2];
    const double deltas[2] = {1e-2, 1e-3};
    for (int k = 0; k < 2; ++k) {
      const double d = deltas[k];
      const double dd = relative_entropy(c.family.at(c.x0 + d), rho0).value();
      err[k] = std::abs(j.value() - 2.0 * dd / (d * d));
    }
    const double ratio = err[1] / err[0];
    worst_ratio = std::max(worst_ratio, ratio);

    // Binary encoding {1 - beta/b: rho0, beta/b: rho1} and the mixture J at theta = 0.
    const DensityMatrix rho1 = c.family.at(c.x0 > 0 ? -0.8 : 0.8);
    const double b = 1.0;
    const double d_ratio = relative_entropy(rho1, rho0).value() / b;
    const ExtendedReal j_mix = reqfi(mixture_family(rho0, rho1), 0.0);
    const std::vector<double> betas = log_grid(1e-3, 1e-2, 10);
    Eigen::MatrixXd a(betas.size(), 2);
    Eigen::VectorXd y(betas.size());
    for (std::size_t i = 0; i < betas.size(); ++i) {
      const double beta = betas[i];
      y(i) = binary_encoding_chi(id, rho1, rho0, b, beta) / beta - d_ratio;
      a(i, 0) = beta;
      a(i, 1) = beta * beta;
    }
    const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(y);
    const double j_fit = -2.0 * b * b * coef(0);
    const double rel = std::abs(j_fit - j_mix.value()) / j_mix.value();
    worst_fit = std::max(worst_fit, rel);
  }
  v.require(worst_ratio <= 0.2, "finite-difference error ratio err(1e-3)/err(1e-2) <= 0.2");
  v.require(worst_fit <= 0.05, "fitted second-order coefficient within 5% of J");
  v.note("20 families, worst error ratio " + fmt(worst_ratio, "%.3g") + " (O(delta) gives 0.1)");
  v.note("worst relative deviation of fitted J " + fmt(worst_fit, "%.2e"));
  return v;
}

// F <= J everywhere; J/2 equals cpuc for displaced phase-insensitive outputs.
Verdict ac6() {
  Verdict v;
  Rng rng(666);
  int evaluated = 0;
  double worst_excess = -1e300;
  auto check = [&](const ParamStateFamily& f, double x0) {
    const FisherPair p = fisher_informations(f, x0);
    if (p.reqfi.is_finite()) worst_excess = std::max(worst_excess, p.qfi - p.reqfi.value());
    ++evaluated;
  };
  for (const QubitCurve& c : random_qubit_curves(20, rng)) check(c.family, c.x0);
  for (int k = 0; k < 20; ++k) {
    const int dim = 2 + k % 3;
    check(mixture_family(random_density_matrix(dim, rng), random_density_matrix(dim, rng)), 0.3);
  }
  v.require(worst_excess <= 1e-8, "F <= J + 1e-8");
  v.note(std::to_string(evaluated) + " families, max (F - J) " + fmt(worst_excess, "%.2e"));

  fock::TruncationConfig cfg;
  cfg.cutoff = 40;
  for (const FiducialChannel& ch : {FiducialChannel{0.9, 1.0, 1.0}, FiducialChannel{1.5, 0.0, 1.0}}) {
    const ParamStateFamily f = fock::coherent_output_family(ch, 1.0, cfg);
    const ExtendedReal j = reqfi(f, 0.0);
    const double c = gaussian::cpuc_gaussian(ch).value();
    const bool ok = j.is_finite() && std::abs(j.value() / 2 - c) <= 1e-3;
    v.require(ok, "J/2 = cpuc for eta = " + fmt(ch.eta));
    v.note("eta " + fmt(ch.eta) + ": J/2 = " + fmt(j.value() / 2) + ", cpuc = " + fmt(c));
  }
  return v;
}

// Capacity-cost function: nondecreasing, midpoint-concave, C/beta nonincreasing.
Verdict ac7() {
  Verdict v;
  const KrausChannel ch = generalized_amplitude_damping_channel(0.3, 0.8);
  std::vector<CostedState> states{{DensityMatrix::basis_state(2, 0), 0.0},
                                  {DensityMatrix::basis_state(2, 1), 1.0},
                                  {bloch_state(Eigen::Vector3d(1.0, 0.0, 0.0)), 2.0}};
  std::vector<double> betas(20);
  std::vector<double> cap(20);
  for (int i = 0; i < 20; ++i) {
    betas[i] = 0.1 * (i + 1);
    const CapacityCostPoint p = capacity_cost(states, ch, betas[i]);
    v.require(p.converged, "converged at beta = " + fmt(betas[i]));
    cap[i] = p.capacity;
  }
  double worst_mono = 0.0, worst_concave = 0.0, worst_ratio = 0.0;
  for (int i = 1; i < 20; ++i) {
    worst_mono = std::max(worst_mono, cap[i - 1] - cap[i]);
    worst_ratio = std::max(worst_ratio, cap[i] / betas[i] - cap[i - 1] / betas[i - 1]);
    if (i + 1 < 20) worst_concave = std::max(worst_concave, 0.5 * (cap[i - 1] + cap[i + 1]) - cap[i]);
  }
  v.require(worst_mono <= 1e-6, "nondecreasing within 1e-6");
  v.require(worst_concave <= 1e-6, "midpoint-concave within 1e-6");
  v.require(worst_ratio <= 1e-6, "C/beta nonincreasing within 1e-6");
  v.note("C(0.1) = " + fmt(cap.front()) + ", C(2) = " + fmt(cap.back()) + "; worst violations " +
         fmt(worst_mono, "%.1e") + ", " + fmt(worst_concave, "%.1e") + ", " + fmt(worst_ratio, "%.1e"));
  return v;
}

// Squeezed environment beats the phase-insensitive value.
Verdict ac8() {
  Verdict v;
  const double c_ph = gaussian::cpuc_gaussian({0.9, 1.0, 1.0}).value();
  for (double w : {0.5, 2.0}) {
    const FiducialChannel ch{0.9, 1.0, w};
    const double c_sq = gaussian::cpuc_gaussian(ch).value();
    v.require(c_sq >= c_ph, "C_sq >= C_ph at omega~ = " + fmt(w));
    const gaussian::OutputParams vac = gaussian::vacuum_output_params(ch);
    const double w_max = std::max(vac.omega, 1.0 / vac.omega);
    const double formula = 0.9 * w_max * std::log((vac.n_thermal + 1.0) / vac.n_thermal);
    v.require(std::abs(c_sq - formula) <= 1e-12 * formula, "closed form at omega~ = " + fmt(w));
    const gaussian::NumericalSupremum sup = gaussian::cpuc_gaussian_numeric(ch);
    const double rel = std::abs(sup.value.value() - c_sq) / c_sq;
    v.require(sup.converged && rel <= 1e-4, "numeric supremum within 1e-4 at omega~ = " + fmt(w));
    v.note("omega~ " + fmt(w) + ": C_sq = " + fmt(c_sq) + " (N0 = " + fmt(vac.n_thermal) + ", omega0 = " +
           fmt(vac.omega) + "), supremum rel. deviation " + fmt(rel, "%.1e"));
  }
  v.note("C_ph = " + fmt(c_ph));
  return v;
}

// Infinite and zero cases in finite dimension.
Verdict ac9() {
  Verdict v;
  const ParamStateFamily family = bloch_family(std::vector<double>{0.0, 0.0, 1.0});
  const CostFunction cost = photon_number_cost(2);
  const CpucResult id = capacity_per_unit_cost(identity_channel(2), family, cost);
  v.require(id.value.is_infinite(), "identity channel gives +inf");
  v.require(std::holds_alternative<SupportMismatchWitness>(id.witness), "support-mismatch witness");
  const CpucResult dep = capacity_per_unit_cost(completely_depolarizing_channel(2), family, cost);
  v.require(dep.value.is_finite() && dep.value.value() == 0.0, "depolarizing channel gives exactly 0");
  v.note("identity: " + format_value(id.value) + ", depolarizing: " + format_value(dep.value));
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"AC1 thermal-channel capacity per unit cost", ac1},
      {"AC2 lossy-channel divergence", ac2},
      {"AC3 Fock-space oracle equivalence", ac3},
      {"AC4 Holevo two-form equality", ac4},
      {"AC5 REQFI consistency", ac5},
      {"AC6 estimation chain", ac6},
      {"AC7 capacity-cost structure", ac7},
      {"AC8 squeezing advantage", ac8},
      {"AC9 finite-dimensional infinite and zero cases", ac9},
  };
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.passed = false;
      v.detail = std::string("exception: ") + e.what();
    }
    if (!v.passed) ++failures;
    std::printf("[%s] %s: %s\n", v.passed ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
