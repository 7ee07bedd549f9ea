#pragma once

#include <stdexcept>
#include <string>

namespace iwa {

// Bad type/rank pair, unsupported prime, or malformed run configuration.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Argument outside an operation's domain (non-simple root, exponent not
// divisible by p^s, zero series where nonzero is required, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Element does not lie in the first congruence kernel.
struct NotInKernelError : DomainError {
  using DomainError::DomainError;
};

// Matrix model cannot separate Lazard coordinates at some graded level.
struct ModelNotFaithfulError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ring precision too low for the requested truncation degree.
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Series operands belong to different contexts.
struct ContextError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace iwa
