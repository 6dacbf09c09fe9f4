#pragma once

#include <stdexcept>

namespace qcpuc {

// Malformed or inconsistent input (non-Hermitian matrix, bad shapes, bad JSON).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation (g(x) for x < 1/2,
// infeasible cost constraint, negative cost).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller violated an operation's precondition (family without a free point,
// vector-valued parameter where a scalar one is required).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The numerics could not deliver the requested accuracy (Fock truncation
// leakage, unresolved spectra, optimizer failure).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qcpuc
