#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qcpuc {

struct ValidationOptions {
  bool quick = false;
  std::uint64_t seed = 0;
  /// Negative control: scales the Gaussian closed-form relative entropy by
  /// (1 + 1e-3) before it is compared with the oracles.
  bool perturb_closed_form = false;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  int samples = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// Cross-checks between independent implementations: Gaussian closed forms
/// against the Fock-space oracle, the two Holevo forms, REQFI against finite
/// differences of the relative entropy, and the Gaussian capacity per unit
/// cost against a brute-force supremum.
ValidationReport run_validation(const ValidationOptions& options = {});

}  // namespace qcpuc
