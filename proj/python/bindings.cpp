#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <limits>
#include <variant>

#include "qcpuc/capacity.hpp"
#include "qcpuc/channels.hpp"
#include "qcpuc/errors.hpp"
#include "qcpuc/estimation.hpp"
#include "qcpuc/family.hpp"
#include "qcpuc/fock.hpp"
#include "qcpuc/gaussian.hpp"
#include "qcpuc/io.hpp"
#include "qcpuc/quantum.hpp"
#include "qcpuc/validation.hpp"

namespace py = pybind11;
using namespace qcpuc;

namespace {

double to_float(const ExtendedReal& x) { return x.value(); }

KrausChannel make_channel(const std::vector<ComplexMatrix>& kraus) {
  KrausChannel ch(kraus);
  const KrausCheck check = validate_kraus(ch);
  if (!check.complete) throw ValidationError("Kraus operators are not trace preserving");
  return ch;
}

py::dict witness_dict(const CpucWitness& w) {
  py::dict d;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SupportMismatchWitness>) {
          d["kind"] = "support-mismatch";
        } else if constexpr (std::is_same_v<T, ZeroCostWitness>) {
          d["kind"] = "zero-cost";
        } else {
          d["kind"] = "maximizer";
          d["ratio"] = v.ratio;
        }
        d["x"] = v.parameter;
      },
      w);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Capacity per unit cost of quantum channels";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  // Finite-dimensional states and channels.
  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<const ComplexMatrix&>(), py::arg("matrix"))
      .def_property_readonly("matrix", &DensityMatrix::matrix)
      .def_property_readonly("dim", &DensityMatrix::dim);

  py::class_<KrausChannel>(m, "KrausChannel")
      .def(py::init(&make_channel), py::arg("kraus"))
      .def_property_readonly("kraus", &KrausChannel::kraus_ops)
      .def_property_readonly("dim_in", &KrausChannel::dim_in)
      .def_property_readonly("dim_out", &KrausChannel::dim_out)
      .def("apply", [](const KrausChannel& ch, const DensityMatrix& rho) { return apply(ch, rho); });

  m.def("identity_channel", &identity_channel, py::arg("dim"));
  m.def("completely_depolarizing_channel", &completely_depolarizing_channel, py::arg("dim"));
  m.def("amplitude_damping_channel", &amplitude_damping_channel, py::arg("decay"));
  m.def("generalized_amplitude_damping_channel", &generalized_amplitude_damping_channel,
        py::arg("decay"), py::arg("p"));
  m.def("channel_from_json", &io::parse_channel, py::arg("text"));

  m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("rho"));
  m.def(
      "relative_entropy",
      [](const DensityMatrix& rho, const DensityMatrix& sigma) { return to_float(relative_entropy(rho, sigma)); },
      py::arg("rho"), py::arg("sigma"));

  m.def(
      "holevo_chi",
      [](const std::vector<std::pair<double, DensityMatrix>>& symbols, const KrausChannel& ch) {
        std::vector<EnsembleSymbol> s;
        for (const auto& [p, rho] : symbols) s.push_back({p, rho, 0.0});
        const Ensemble e(std::move(s));
        return py::make_tuple(holevo_chi_entropy_form(e, ch), holevo_chi_relent_form(e, ch));
      },
      py::arg("symbols"), py::arg("channel"),
      "Entropy and relative-entropy forms of chi for [(prior, state), ...].");

  m.def(
      "capacity_cost",
      [](const std::vector<std::pair<DensityMatrix, double>>& states, const KrausChannel& ch, double beta) {
        std::vector<CostedState> s;
        for (const auto& [rho, b] : states) s.push_back({rho, b});
        const CapacityCostPoint p = capacity_cost(s, ch, beta);
        py::dict d;
        d["capacity"] = p.capacity;
        d["prior"] = p.optimal_prior;
        d["average_cost"] = p.average_cost;
        d["multiplier"] = p.multiplier;
        d["converged"] = p.converged;
        return d;
      },
      py::arg("states"), py::arg("channel"), py::arg("beta"),
      "Capacity-cost function over priors on [(state, cost), ...].");

  // Families and capacity per unit cost.
  py::class_<ParamStateFamily>(m, "Family")
      .def_property_readonly("name", &ParamStateFamily::name)
      .def_property_readonly("param_dim", &ParamStateFamily::param_dim)
      .def_property_readonly("state_dim", &ParamStateFamily::state_dim)
      .def("__call__", [](const ParamStateFamily& f, const std::vector<double>& x) { return f(x); });

  m.def("family_from_json", &io::parse_family, py::arg("text"));
  m.def(
      "bloch_family",
      [](std::optional<std::vector<double>> free_point) { return bloch_family(std::move(free_point)); },
      py::arg("free_point") = py::none());
  m.def("mixture_family", &mixture_family, py::arg("rho0"), py::arg("rho1"));

  m.def(
      "capacity_per_unit_cost",
      [](const KrausChannel& ch, const ParamStateFamily& family, std::optional<ComplexMatrix> cost_observable,
         int grid_points) {
        const CostFunction cost = cost_observable ? CostFunction{ObservableCost{*cost_observable}}
                                                  : CostFunction{photon_number_cost(family.state_dim())};
        CpucOptions options;
        options.grid_points = grid_points;
        const CpucResult r = capacity_per_unit_cost(ch, family, cost, options);
        py::dict d;
        d["value"] = to_float(r.value);
        d["witness"] = witness_dict(r.witness);
        d["converged"] = r.converged;
        return d;
      },
      py::arg("channel"), py::arg("family"), py::arg("cost_observable") = py::none(),
      py::arg("grid_points") = 33,
      "sup over family members of D(out || free out) / cost; photon-number cost by default.");

  m.def(
      "fisher_informations",
      [](const ParamStateFamily& f, double x0) {
        const FisherPair p = fisher_informations(f, x0);
        return py::make_tuple(to_float(p.reqfi), p.qfi);
      },
      py::arg("family"), py::arg("x0"), "(REQFI J, SLD QFI F) of a scalar family.");

  // One-mode Gaussian channels.
  py::class_<gaussian::FiducialChannel>(m, "GaussianChannel")
      .def(py::init([](double eta, double n_tilde, double omega_tilde) {
             gaussian::FiducialChannel ch{eta, n_tilde, omega_tilde};
             ch.validate();
             return ch;
           }),
           py::arg("eta"), py::arg("n_tilde") = 0.0, py::arg("omega_tilde") = 1.0)
      .def_readonly("eta", &gaussian::FiducialChannel::eta)
      .def_readonly("n_tilde", &gaussian::FiducialChannel::n_tilde)
      .def_readonly("omega_tilde", &gaussian::FiducialChannel::omega_tilde)
      .def("__repr__", [](const gaussian::FiducialChannel& c) {
        return "GaussianChannel(eta=" + format_value(c.eta) + ", n_tilde=" + format_value(c.n_tilde) +
               ", omega_tilde=" + format_value(c.omega_tilde) + ")";
      });

  m.def(
      "cpuc_gaussian", [](const gaussian::FiducialChannel& ch) { return to_float(gaussian::cpuc_gaussian(ch)); },
      py::arg("channel"), "Capacity per unit cost in nats per photon (inf for lossy channels).");
  m.def(
      "cpuc_gaussian_numeric",
      [](const gaussian::FiducialChannel& ch) { return to_float(gaussian::cpuc_gaussian_numeric(ch).value); },
      py::arg("channel"));
  m.def(
      "channel_class", [](const gaussian::FiducialChannel& ch) { return gaussian::to_string(gaussian::classify(ch)); },
      py::arg("channel"));
  m.def(
      "vacuum_output_params",
      [](const gaussian::FiducialChannel& ch) {
        const gaussian::OutputParams p = gaussian::vacuum_output_params(ch);
        return py::make_tuple(p.n_thermal, p.omega);
      },
      py::arg("channel"), "(N0, omega0) of the vacuum output.");
  m.def(
      "relent_vs_vacuum_output",
      [](const gaussian::FiducialChannel& ch, double n_thermal, double omega, std::complex<double> alpha) {
        return to_float(gaussian::relent_vs_vacuum_output(ch, {n_thermal, omega, alpha}));
      },
      py::arg("channel"), py::arg("n_thermal") = 0.0, py::arg("omega") = 1.0, py::arg("alpha") = 0.0);
  m.def(
      "pie_curve",
      [](const gaussian::FiducialChannel& ch, const std::vector<double>& nbar) {
        std::vector<std::tuple<double, double, double>> rows;
        for (const gaussian::PiePoint& p : gaussian::pie_curve(ch, nbar)) rows.emplace_back(p.nbar, p.pie, p.capacity);
        return rows;
      },
      py::arg("channel"), py::arg("nbar"), "[(nbar, pie, capacity), ...] in nats.");
  m.def(
      "oracle_relative_entropy",
      [](std::tuple<double, double, std::complex<double>> p1, std::tuple<double, double, std::complex<double>> p2,
         int cutoff) {
        fock::TruncationConfig cfg;
        cfg.cutoff = cutoff;
        const auto [n1, w1, a1] = p1;
        const auto [n2, w2, a2] = p2;
        return to_float(fock::oracle_relative_entropy({n1, w1, a1}, {n2, w2, a2}, cfg));
      },
      py::arg("state1"), py::arg("state2"), py::arg("cutoff") = 60,
      "Fock-space relative entropy of two (N, omega, alpha) Gaussian states.");

  m.def(
      "validate",
      [](bool quick, std::uint64_t seed) {
        ValidationOptions o;
        o.quick = quick;
        o.seed = seed;
        const ValidationReport r = run_validation(o);
        py::list checks;
        for (const CheckResult& c : r.checks) {
          py::dict d;
          d["name"] = c.name;
          d["passed"] = c.passed;
          d["samples"] = c.samples;
          d["max_error"] = c.max_error;
          d["tolerance"] = c.tolerance;
          checks.append(d);
        }
        return py::make_tuple(r.all_passed(), checks);
      },
      py::arg("quick") = true, py::arg("seed") = 0);
}
