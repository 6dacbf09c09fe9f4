#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qcpuc/capacity.hpp"
#include "qcpuc/family.hpp"
#include "qcpuc/gaussian.hpp"

namespace qcpuc::io {

// JSON input formats. Matrices are arrays of rows, each row an array of
// entries; an entry is a real number or a [re, im] pair. A flat row-major
// list of entries is accepted where the shape is known from context.
// All parse and validation failures throw ValidationError.

std::string read_text_file(const std::filesystem::path& path);

/// {"dim_in": int, "dim_out": int, "kraus": [matrix, ...]}; the operator set
/// must be trace preserving within 1e-9.
KrausChannel parse_channel(const std::string& text);
KrausChannel load_channel(const std::filesystem::path& path);

/// {"dim": int, "symbols": [{"prior": p, "cost": b, "state": matrix}, ...]}.
Ensemble parse_ensemble(const std::string& text);
Ensemble load_ensemble(const std::filesystem::path& path);

/// Same layout as an ensemble; priors are optional and ignored.
std::vector<CostedState> parse_costed_states(const std::string& text);
std::vector<CostedState> load_costed_states(const std::filesystem::path& path);

/// Family description, selected by "kind":
///   {"kind": "bloch", "free_point": [x, y, z]}
///   {"kind": "bloch-curve", "r0": [..], "v": [..], "w": [..], "range": r}
///   {"kind": "mixture", "rho0": matrix, "rho1": matrix}
///   {"kind": "coherent-output", "eta": e, "n_tilde": n, "omega_tilde": w,
///    "x_max": x, "cutoff": c}; x_max defaults to 0.3 and cutoff to 30
ParamStateFamily parse_family(const std::string& text);
ParamStateFamily load_family(const std::filesystem::path& path);

/// {"kind": "photon"}, {"kind": "quadratic"} or {"kind": "observable", "matrix": m}.
/// `state_dim` sizes the photon-number observable.
CostFunction parse_cost(const std::string& text, int state_dim);
CostFunction load_cost(const std::filesystem::path& path, int state_dim);

/// {"eta": e, "n_tilde": n, "omega_tilde": w}; n_tilde and omega_tilde
/// default to 0 and 1.
gaussian::FiducialChannel parse_gaussian_channel(const std::string& text);
gaussian::FiducialChannel load_gaussian_channel(const std::filesystem::path& path);

/// Serializes a channel in the format read by parse_channel.
std::string channel_to_json(const KrausChannel& channel);

}  // namespace qcpuc::io
