#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "qcpuc/capacity.hpp"
#include "qcpuc/errors.hpp"
#include "qcpuc/estimation.hpp"
#include "qcpuc/gaussian.hpp"
#include "qcpuc/io.hpp"
#include "qcpuc/validation.hpp"

namespace qcpuc::cli {
namespace {

using nlohmann::json;

struct Units {
  std::string name = "nats";

  double scale() const { return name == "bits" ? 1.0 / std::numbers::ln2 : 1.0; }
  ExtendedReal convert(ExtendedReal x) const {
    return x.is_infinite() ? x : ExtendedReal::finite(x.value() * scale());
  }
  double convert(double x) const { return x * scale(); }
};

json json_value(ExtendedReal x) {
  if (x.is_infinite()) return "inf";
  return x.value();
}

std::string format_vector(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ", ";
    s += format_value(v[i]);
  }
  return s + "]";
}

void add_unit_option(CLI::App* cmd, Units& units) {
  cmd->add_option("--unit", units.name, "Information unit")
      ->check(CLI::IsMember({"nats", "bits"}))
      ->capture_default_str();
}

struct GaussianFlags {
  double eta = 1.0;
  double n_tilde = 0.0;
  double omega_tilde = 1.0;
  std::string params_path;

  gaussian::FiducialChannel channel() const {
    if (!params_path.empty()) return io::load_gaussian_channel(params_path);
    gaussian::FiducialChannel ch{eta, n_tilde, omega_tilde};
    ch.validate();
    return ch;
  }
};

void add_gaussian_options(CLI::App* cmd, GaussianFlags& f) {
  auto* eta = cmd->add_option("--eta", f.eta, "Transmissivity or gain");
  auto* n = cmd->add_option("--n-tilde", f.n_tilde, "Environment thermal photons")->capture_default_str();
  auto* w = cmd->add_option("--omega-tilde", f.omega_tilde, "Environment squeezing")->capture_default_str();
  auto* params = cmd->add_option("--params", f.params_path, "Channel parameters as JSON");
  params->excludes(eta)->excludes(n)->excludes(w);
  cmd->callback([eta, params] {
    if (eta->count() == 0 && params->count() == 0) {
      throw CLI::RequiredError("--eta or --params");
    }
  });
}

std::optional<KrausChannel> maybe_channel(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return io::load_channel(path);
}

// ---------------------------------------------------------------------------

int cmd_gaussian_cpuc(const GaussianFlags& flags, const Units& units, bool as_json,
                      std::ostream& out) {
  const gaussian::FiducialChannel ch = flags.channel();
  const ExtendedReal c = units.convert(gaussian::cpuc_gaussian(ch));
  const gaussian::OutputParams vac = gaussian::vacuum_output_params(ch);
  const std::string cls = gaussian::to_string(gaussian::classify(ch));
  if (as_json) {
    out << json{{"cpuc", json_value(c)}, {"unit", units.name + "/photon"}, {"class", cls},
                {"n0_out", vac.n_thermal}, {"omega0_out", vac.omega}}
               .dump(2)
        << '\n';
    return 0;
  }
  out << "cpuc: " << format_value(c) << ' ' << units.name << "/photon\n"
      << "class: " << cls << '\n'
      << "n0_out: " << format_value(vac.n_thermal) << '\n'
      << "omega0_out: " << format_value(vac.omega) << '\n';
  return 0;
}

struct PieFlags {
  double nbar_min = 1e-6;
  double nbar_max = 1.0;
  int points = 61;
  bool log_grid = false;
  std::string out_path;
};

int cmd_pie_curve(const GaussianFlags& flags, const PieFlags& pf, const Units& units,
                  std::ostream& out) {
  const gaussian::FiducialChannel ch = flags.channel();
  if (!(pf.nbar_min > 0.0) || !(pf.nbar_max > pf.nbar_min) || !std::isfinite(pf.nbar_max)) {
    throw ValidationError("pie-curve: need 0 < nbar-min < nbar-max");
  }
  if (pf.points < 2) throw ValidationError("pie-curve: need at least 2 points");
  std::vector<double> grid(pf.points);
  for (int i = 0; i < pf.points; ++i) {
    const double t = static_cast<double>(i) / (pf.points - 1);
    grid[i] = pf.log_grid ? pf.nbar_min * std::pow(pf.nbar_max / pf.nbar_min, t)
                          : pf.nbar_min + t * (pf.nbar_max - pf.nbar_min);
  }
  grid.front() = pf.nbar_min;
  grid.back() = pf.nbar_max;

  std::ostringstream csv;
  csv << "nbar,pie,capacity\n";
  for (const gaussian::PiePoint& p : gaussian::pie_curve(ch, grid)) {
    csv << format_value(p.nbar) << ',' << format_value(units.convert(p.pie)) << ','
        << format_value(units.convert(p.capacity)) << '\n';
  }
  if (pf.out_path.empty()) {
    out << csv.str();
  } else {
    std::ofstream file(pf.out_path, std::ios::binary);
    if (!file) throw ValidationError("cannot write " + pf.out_path);
    file << csv.str();
  }
  return 0;
}

struct FamilyFlags {
  std::string channel;
  std::string family;
  std::string cost;
  int grid = 33;
};

json witness_json(const CpucWitness& w) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SupportMismatchWitness>) {
          return {{"kind", "support-mismatch"}, {"x", v.parameter}};
        } else if constexpr (std::is_same_v<T, ZeroCostWitness>) {
          return {{"kind", "zero-cost"}, {"x", v.parameter}};
        } else {
          return {{"kind", "maximizer"}, {"x", v.parameter}, {"ratio", v.ratio}};
        }
      },
      w);
}

std::string witness_text(const CpucWitness& w) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SupportMismatchWitness>) {
          return "support mismatch at x=" + format_vector(v.parameter);
        } else if constexpr (std::is_same_v<T, ZeroCostWitness>) {
          return "zero-cost distinguishable member at x=" + format_vector(v.parameter);
        } else {
          return "maximizer at x=" + format_vector(v.parameter);
        }
      },
      w);
}

int cmd_finite_cpuc(const FamilyFlags& f, const Units& units, bool as_json, std::ostream& out,
                    std::ostream& err) {
  const ParamStateFamily family = io::load_family(f.family);
  const KrausChannel channel = maybe_channel(f.channel).value_or(identity_channel(family.state_dim()));
  const CostFunction cost = f.cost.empty() ? CostFunction{photon_number_cost(family.state_dim())}
                                           : io::load_cost(f.cost, family.state_dim());
  CpucOptions options;
  options.grid_points = f.grid;
  const CpucResult r = capacity_per_unit_cost(channel, family, cost, options);
  const ExtendedReal v = units.convert(r.value);
  if (as_json) {
    out << json{{"cpuc", json_value(v)},           {"unit", units.name + "/cost"},
                {"witness", witness_json(r.witness)}, {"converged", r.converged},
                {"evaluations", r.evaluations}}
               .dump(2)
        << '\n';
  } else {
    out << "cpuc: " << format_value(v) << " (" << witness_text(r.witness) << ") " << units.name
        << "/cost\n";
  }
  if (!r.converged) {
    err << "error: ratio optimizer did not converge after " << r.evaluations << " evaluations\n";
    return 2;
  }
  return 0;
}

int cmd_chi(const std::string& channel_path, const std::string& ensemble_path, const Units& units,
            bool as_json, std::ostream& out) {
  const KrausChannel channel = io::load_channel(channel_path);
  const Ensemble ensemble = io::load_ensemble(ensemble_path);
  const double a = holevo_chi_entropy_form(ensemble, channel);
  const double b = holevo_chi_relent_form(ensemble, channel);
  if (as_json) {
    out << json{{"chi_entropy_form", units.convert(a)},
                {"chi_relent_form", units.convert(b)},
                {"discrepancy", std::abs(a - b)},
                {"unit", units.name}}
               .dump(2)
        << '\n';
    return 0;
  }
  out << "chi (entropy form): " << format_value(units.convert(a)) << ' ' << units.name << '\n'
      << "chi (relative-entropy form): " << format_value(units.convert(b)) << ' ' << units.name
      << '\n'
      << "discrepancy: " << format_value(std::abs(a - b)) << " nats\n";
  return 0;
}

int cmd_capacity_cost(const std::string& channel_path, const std::string& states_path,
                      const std::vector<double>& betas, const Units& units, bool as_json,
                      std::ostream& out, std::ostream& err) {
  const KrausChannel channel = io::load_channel(channel_path);
  const std::vector<CostedState> states = io::load_costed_states(states_path);
  json rows = json::array();
  std::ostringstream text;
  text << "beta,capacity,average_cost,multiplier\n";
  bool converged = true;
  for (double beta : betas) {
    const CapacityCostPoint p = capacity_cost(states, channel, beta);
    converged = converged && p.converged;
    rows.push_back({{"beta", beta},
                    {"capacity", units.convert(p.capacity)},
                    {"average_cost", p.average_cost},
                    {"prior", p.optimal_prior},
                    {"converged", p.converged}});
    text << format_value(beta) << ',' << format_value(units.convert(p.capacity)) << ','
         << format_value(p.average_cost) << ',' << format_value(p.multiplier) << '\n';
  }
  if (as_json) {
    out << json{{"unit", units.name}, {"points", rows}}.dump(2) << '\n';
  } else {
    out << text.str();
  }
  if (!converged) {
    err << "error: prior optimization did not converge for at least one beta\n";
    return 2;
  }
  return 0;
}

int cmd_bounds(const FamilyFlags& f, bool with_cpuc, const Units& units, bool as_json,
               std::ostream& out, std::ostream& err) {
  const ParamStateFamily family = io::load_family(f.family);
  const KrausChannel channel = maybe_channel(f.channel).value_or(identity_channel(family.state_dim()));
  CpucOptions options;
  options.grid_points = f.grid;
  const EstimationBounds b =
      estimation_bounds_report(channel, family, QuadraticCost{}, with_cpuc, options);
  const ExtendedReal j_half = units.convert(b.j_half);
  const double f_half = units.convert(b.f_half);
  // E_min bounds carry inverse information units.
  const ExtendedReal inv_j =
      b.inv_j.is_infinite() ? b.inv_j : ExtendedReal::finite(b.inv_j.value() / units.scale());
  const ExtendedReal inv_f =
      b.inv_f.is_infinite() ? b.inv_f : ExtendedReal::finite(b.inv_f.value() / units.scale());

  if (as_json) {
    json j{{"j_half", json_value(j_half)}, {"f_half", f_half},       {"inv_j", json_value(inv_j)},
           {"inv_f", json_value(inv_f)},   {"vacuous", b.vacuous},   {"chain_holds", b.chain_holds},
           {"unit", units.name}};
    if (b.cpuc) {
      j["cpuc"] = json_value(units.convert(b.cpuc->value));
      j["witness"] = witness_json(b.cpuc->witness);
    }
    out << j.dump(2) << '\n';
  } else {
    out << "J/2: " << format_value(j_half) << ' ' << units.name << '\n'
        << "F/2: " << format_value(f_half) << ' ' << units.name << '\n'
        << "E_min chain: 1/J = " << format_value(inv_j) << " <= 1/F = " << format_value(inv_f)
        << (b.vacuous ? " (vacuous)" : "") << '\n';
    if (b.cpuc) {
      out << "cpuc: " << format_value(units.convert(b.cpuc->value)) << " ("
          << witness_text(b.cpuc->witness) << ") " << units.name << "/cost\n";
      out << "check C >= J/2 >= F/2: " << (b.chain_holds ? "holds" : "VIOLATED") << '\n';
    } else {
      out << "check J/2 >= F/2: " << (b.chain_holds ? "holds" : "VIOLATED") << '\n';
    }
  }
  if (!b.chain_holds) {
    err << "error: bound chain violated\n";
    return 2;
  }
  if (b.cpuc && !b.cpuc->converged) {
    err << "error: ratio optimizer did not converge\n";
    return 2;
  }
  return 0;
}

int cmd_validate(const ValidationOptions& options, bool as_json, std::ostream& out) {
  const ValidationReport report = run_validation(options);
  if (as_json) {
    json checks = json::array();
    for (const CheckResult& c : report.checks) {
      checks.push_back({{"name", c.name},
                        {"passed", c.passed},
                        {"samples", c.samples},
                        {"max_error", c.max_error},
                        {"tolerance", c.tolerance},
                        {"detail", c.detail}});
    }
    out << json{{"passed", report.all_passed()}, {"checks", checks}}.dump(2) << '\n';
  } else {
    for (const CheckResult& c : report.checks) {
      out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.samples
          << " samples, max error " << format_value(c.max_error, 3) << " (tol "
          << format_value(c.tolerance, 3) << ")";
      if (!c.detail.empty()) out << ", " << c.detail;
      out << '\n';
    }
  }
  return report.all_passed() ? 0 : 2;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity per unit cost and related quantities for quantum channels", "qcpuc"};
  app.require_subcommand(1);

  Units units;
  bool as_json = false;
  GaussianFlags gflags;
  PieFlags pflags;
  FamilyFlags fflags;
  std::string channel_path;
  std::string ensemble_path;
  std::string states_path;
  std::vector<double> betas;
  bool no_cpuc = false;
  ValidationOptions vopts;

  auto* gc = app.add_subcommand("gaussian-cpuc", "Closed-form capacity per unit cost of a Gaussian channel");
  add_gaussian_options(gc, gflags);
  add_unit_option(gc, units);
  gc->add_flag("--json", as_json, "Emit JSON");

  auto* pie = app.add_subcommand("pie-curve", "Photon information efficiency curve as CSV");
  add_gaussian_options(pie, gflags);
  add_unit_option(pie, units);
  pie->add_option("--nbar-min", pflags.nbar_min, "Smallest mean photon number")->capture_default_str();
  pie->add_option("--nbar-max", pflags.nbar_max, "Largest mean photon number")->capture_default_str();
  pie->add_option("--points", pflags.points, "Grid size")->capture_default_str();
  pie->add_flag("--log-grid", pflags.log_grid, "Geometric spacing");
  pie->add_option("--out", pflags.out_path, "Output file (stdout if omitted)");

  auto* fc = app.add_subcommand("finite-cpuc", "Capacity per unit cost over a state family");
  fc->add_option("--channel", fflags.channel, "Kraus channel JSON (identity if omitted)");
  fc->add_option("--family", fflags.family, "Family JSON")->required();
  fc->add_option("--cost", fflags.cost, "Cost JSON (photon number if omitted)");
  fc->add_option("--grid", fflags.grid, "Grid points per dimension")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  add_unit_option(fc, units);
  fc->add_flag("--json", as_json, "Emit JSON");

  auto* chi = app.add_subcommand("chi", "Holevo information of an ensemble through a channel");
  chi->add_option("--channel", channel_path, "Kraus channel JSON")->required();
  chi->add_option("--ensemble", ensemble_path, "Ensemble JSON")->required();
  add_unit_option(chi, units);
  chi->add_flag("--json", as_json, "Emit JSON");

  auto* cc = app.add_subcommand("capacity-cost", "Capacity-cost function over priors on fixed states");
  cc->add_option("--channel", channel_path, "Kraus channel JSON")->required();
  cc->add_option("--states", states_path, "States with costs (ensemble layout)")->required();
  cc->add_option("--beta", betas, "Cost budget(s)")->required()->check(CLI::NonNegativeNumber);
  add_unit_option(cc, units);
  cc->add_flag("--json", as_json, "Emit JSON");

  auto* bounds = app.add_subcommand("bounds", "Fisher-information bounds for a scalar family with cost x^2");
  bounds->add_option("--channel", fflags.channel, "Kraus channel JSON (identity if omitted)");
  bounds->add_option("--family", fflags.family, "Family JSON")->required();
  bounds->add_option("--grid", fflags.grid, "Grid points for the capacity per unit cost")
      ->check(CLI::Range(2, 1000))
      ->capture_default_str();
  bounds->add_flag("--no-cpuc", no_cpuc, "Skip the capacity per unit cost");
  add_unit_option(bounds, units);
  bounds->add_flag("--json", as_json, "Emit JSON");

  auto* val = app.add_subcommand("validate", "Run the oracle cross-check suite");
  val->add_flag("--quick", vopts.quick, "Reduced sample counts");
  val->add_option("--seed", vopts.seed, "Random seed")->capture_default_str();
  val->add_flag("--perturb", vopts.perturb_closed_form)->group("");
  val->add_flag("--json", as_json, "Emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gc) return cmd_gaussian_cpuc(gflags, units, as_json, out);
    if (*pie) return cmd_pie_curve(gflags, pflags, units, out);
    if (*fc) return cmd_finite_cpuc(fflags, units, as_json, out, err);
    if (*chi) return cmd_chi(channel_path, ensemble_path, units, as_json, out);
    if (*cc) return cmd_capacity_cost(channel_path, states_path, betas, units, as_json, out, err);
    if (*bounds) return cmd_bounds(fflags, !no_cpuc, units, as_json, out, err);
    if (*val) return cmd_validate(vopts, as_json, out);
  } catch (const ValidationError& e) {
    err << "input error: " << e.what() << '\n';
    return 1;
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << '\n';
    return 1;
  } catch (const PreconditionError& e) {
    err << "input error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace qcpuc::cli
