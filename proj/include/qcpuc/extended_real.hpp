#pragma once

#include <iosfwd>
#include <limits>
#include <string>

namespace qcpuc {

/// Nonnegative real number or +infinity.
///
/// Relative entropies, capacities per unit cost and REQFI values are
/// naturally valued in [0, +inf]; the infinite branch is a legitimate result
/// (disjoint supports), not an error, so it is carried explicitly instead of
/// leaking IEEE infinities through arithmetic.
class ExtendedReal {
 public:
  /// Finite value. Round-off negatives down to -1e-12 are clipped to zero;
  /// anything more negative throws DomainError.
  static ExtendedReal finite(double value);
  static ExtendedReal infinity() { return ExtendedReal(true, 0.0); }

  ExtendedReal() = default;

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  /// The finite value, or +inf as a double.
  double value() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend bool operator==(const ExtendedReal&, const ExtendedReal&) = default;

 private:
  ExtendedReal(bool infinite, double value) : infinite_(infinite), value_(value) {}

  bool infinite_ = false;
  double value_ = 0.0;
};

/// "inf" or the value with `digits` significant digits.
std::string format_value(ExtendedReal x, int digits = 9);
std::string format_value(double x, int digits = 9);

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x);

}  // namespace qcpuc
