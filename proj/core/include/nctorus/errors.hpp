#pragma once

#include <stdexcept>
#include <string>

namespace nctorus {

/// Malformed input: wrong dimensions, invalid moduli, non-skew forms, ...
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands built over different group contexts (or grids).
class ContextMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Well-formed input that violates an operation's precondition
/// (degenerate cocycle, singular T, element outside the fixed-point algebra).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative numeric routine failed to converge.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nctorus
