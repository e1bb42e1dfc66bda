#pragma once

#include <stdexcept>
#include <string>

namespace tsat {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// U or V undefined at the point (beta2, beta3 or 3phi - beta1 not positive).
struct SingularPointError : DomainError {
  using DomainError::DomainError;
};

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Malformed exclusion trace, as opposed to a failed sign check.
struct StructuralError : std::logic_error {
  using std::logic_error::logic_error;
};

// Exhaustive enumeration refused because the instance is too large.
struct GuardError : std::length_error {
  using std::length_error::length_error;
};

}  // namespace tsat
