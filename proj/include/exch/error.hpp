#pragma once

#include <stdexcept>
#include <string>

namespace exch {

/// Argument outside the mathematical domain of an operation (δ ∉ (0,1), n = 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Shapes or dimensions of the operands do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input violates a documented invariant (non-centered weights, broken commutativity pair, bad schema).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A linear system could not be solved (not positive definite, singular).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace exch
