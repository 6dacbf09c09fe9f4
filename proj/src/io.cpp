#include "qcpuc/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qcpuc/errors.hpp"
#include "qcpuc/fock.hpp"

namespace qcpuc::io {
namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ValidationError(std::string(what) + ": " + e.what());
  }
}

Complex parse_entry(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw ValidationError("matrix entry must be a number or a [re, im] pair");
}

// A row-major flat list starts with a number, or with a [re, im] pair when the
// nested reading does not fit the expected shape.
bool is_flat(const json& j, int rows, int cols) {
  const json& first = j[0];
  if (first.is_number()) return true;
  if (!first.is_array() || first.size() != 2 || !first[0].is_number()) return false;
  if (rows < 0 || cols < 0) return false;
  const bool nested_fits = j.size() == static_cast<std::size_t>(rows) && first.size() == static_cast<std::size_t>(cols);
  return !nested_fits && j.size() == static_cast<std::size_t>(rows) * cols;
}

// rows/cols < 0 means "infer from nesting".
ComplexMatrix parse_matrix(const json& j, int rows, int cols) {
  if (!j.is_array() || j.empty()) throw ValidationError("matrix must be a non-empty array");
  const bool flat = is_flat(j, rows, cols);
  if (flat) {
    if (rows < 0 || cols < 0) throw ValidationError("flat matrix needs a known shape");
    if (j.size() != static_cast<std::size_t>(rows) * cols) {
      throw ValidationError("flat matrix has " + std::to_string(j.size()) + " entries, expected " +
                            std::to_string(rows * cols));
    }
    ComplexMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(r, c) = parse_entry(j[r * cols + c]);
    return m;
  }
  const int nr = static_cast<int>(j.size());
  const int nc = j[0].is_array() ? static_cast<int>(j[0].size()) : 0;
  if ((rows >= 0 && nr != rows) || (cols >= 0 && nc != cols) || nc == 0) {
    throw ValidationError("matrix shape mismatch");
  }
  ComplexMatrix m(nr, nc);
  for (int r = 0; r < nr; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != nc) {
      throw ValidationError("matrix rows must have equal length");
    }
    for (int c = 0; c < nc; ++c) m(r, c) = parse_entry(j[r][c]);
  }
  return m;
}

Eigen::Vector3d parse_vec3(const json& j, const char* name) {
  if (!j.is_array() || j.size() != 3) throw ValidationError(std::string(name) + " must have 3 entries");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

int positive_int(const json& j, const char* key) {
  const int v = j.at(key).get<int>();
  if (v <= 0) throw ValidationError(std::string(key) + " must be positive");
  return v;
}

json entry_json(Complex z) { return json::array({z.real(), z.imag()}); }

struct RawSymbol {
  double prior;
  double cost;
  DensityMatrix state;
};

std::vector<RawSymbol> parse_symbols(const json& j, bool need_prior) {
  const int dim = positive_int(j, "dim");
  const json& symbols = j.at("symbols");
  if (!symbols.is_array() || symbols.empty()) throw ValidationError("symbols must be a non-empty array");
  std::vector<RawSymbol> out;
  for (const json& s : symbols) {
    const double prior = need_prior ? s.at("prior").get<double>() : s.value("prior", 0.0);
    const double cost = s.value("cost", 0.0);
    out.push_back({prior, cost, DensityMatrix(parse_matrix(s.at("state"), dim, dim))});
  }
  return out;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

KrausChannel parse_channel(const std::string& text) {
  const json j = parse_json(text);
  return guarded("channel", [&] {
    const int din = positive_int(j, "dim_in");
    const int dout = positive_int(j, "dim_out");
    const json& ops = j.at("kraus");
    if (!ops.is_array() || ops.empty()) throw ValidationError("kraus must be a non-empty array");
    std::vector<ComplexMatrix> kraus;
    for (const json& k : ops) kraus.push_back(parse_matrix(k, dout, din));
    KrausChannel ch(std::move(kraus));
    const KrausCheck check = validate_kraus(ch);
    if (!check.complete) {
      throw ValidationError("Kraus operators are not trace preserving (deviation " +
                            std::to_string(check.max_deviation) + ")");
    }
    return ch;
  });
}

KrausChannel load_channel(const std::filesystem::path& path) {
  return parse_channel(read_text_file(path));
}

Ensemble parse_ensemble(const std::string& text) {
  const json j = parse_json(text);
  return guarded("ensemble", [&] {
    std::vector<EnsembleSymbol> symbols;
    for (auto& s : parse_symbols(j, true)) symbols.push_back({s.prior, s.state, s.cost});
    return Ensemble(std::move(symbols));
  });
}

Ensemble load_ensemble(const std::filesystem::path& path) {
  return parse_ensemble(read_text_file(path));
}

std::vector<CostedState> parse_costed_states(const std::string& text) {
  const json j = parse_json(text);
  return guarded("states", [&] {
    std::vector<CostedState> out;
    for (auto& s : parse_symbols(j, false)) {
      if (!(s.cost >= 0.0)) throw ValidationError("costs must be nonnegative");
      out.push_back({s.state, s.cost});
    }
    return out;
  });
}

std::vector<CostedState> load_costed_states(const std::filesystem::path& path) {
  return parse_costed_states(read_text_file(path));
}

ParamStateFamily parse_family(const std::string& text) {
  const json j = parse_json(text);
  return guarded("family", [&]() -> ParamStateFamily {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "bloch") {
      std::optional<std::vector<double>> free;
      if (j.contains("free_point")) {
        const Eigen::Vector3d f = parse_vec3(j.at("free_point"), "free_point");
        free = std::vector<double>{f(0), f(1), f(2)};
      }
      return bloch_family(free);
    }
    if (kind == "bloch-curve") {
      return bloch_curve_family(parse_vec3(j.at("r0"), "r0"), parse_vec3(j.at("v"), "v"),
                                parse_vec3(j.value("w", json::array({0, 0, 0})), "w"),
                                j.value("range", 1.0));
    }
    if (kind == "mixture") {
      const ComplexMatrix r0 = parse_matrix(j.at("rho0"), -1, -1);
      const ComplexMatrix r1 = parse_matrix(j.at("rho1"), -1, -1);
      return mixture_family(DensityMatrix(r0), DensityMatrix(r1));
    }
    if (kind == "coherent-output") {
      const gaussian::FiducialChannel ch{j.at("eta").get<double>(), j.value("n_tilde", 0.0),
                                         j.value("omega_tilde", 1.0)};
      fock::TruncationConfig cfg;
      cfg.cutoff = j.value("cutoff", 30);
      cfg.tail_tol = j.value("tail_tol", cfg.tail_tol);
      return fock::coherent_output_family(ch, j.value("x_max", 0.3), cfg);
    }
    throw ValidationError("unknown family kind '" + kind + "'");
  });
}

ParamStateFamily load_family(const std::filesystem::path& path) {
  return parse_family(read_text_file(path));
}

CostFunction parse_cost(const std::string& text, int state_dim) {
  const json j = parse_json(text);
  return guarded("cost", [&]() -> CostFunction {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "photon") return photon_number_cost(state_dim);
    if (kind == "quadratic") return QuadraticCost{};
    if (kind == "observable") {
      const ComplexMatrix b = parse_matrix(j.at("matrix"), state_dim, state_dim);
      if (hermiticity_defect(b) > kStateTolerance) throw ValidationError("cost observable must be Hermitian");
      return ObservableCost{b};
    }
    throw ValidationError("unknown cost kind '" + kind + "'");
  });
}

CostFunction load_cost(const std::filesystem::path& path, int state_dim) {
  return parse_cost(read_text_file(path), state_dim);
}

gaussian::FiducialChannel parse_gaussian_channel(const std::string& text) {
  const json j = parse_json(text);
  return guarded("gaussian channel", [&] {
    gaussian::FiducialChannel ch{j.at("eta").get<double>(), j.value("n_tilde", 0.0),
                                 j.value("omega_tilde", 1.0)};
    ch.validate();
    return ch;
  });
}

gaussian::FiducialChannel load_gaussian_channel(const std::filesystem::path& path) {
  return parse_gaussian_channel(read_text_file(path));
}

std::string channel_to_json(const KrausChannel& channel) {
  json ops = json::array();
  for (const ComplexMatrix& k : channel.kraus_ops()) {
    json rows = json::array();
    for (int r = 0; r < k.rows(); ++r) {
      json row = json::array();
      for (int c = 0; c < k.cols(); ++c) row.push_back(entry_json(k(r, c)));
      rows.push_back(row);
    }
    ops.push_back(rows);
  }
  json j{{"dim_in", channel.dim_in()}, {"dim_out", channel.dim_out()}, {"kraus", ops}};
  return j.dump(2);
}

}  // namespace qcpuc::io
