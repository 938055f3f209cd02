#pragma once

#include <stdexcept>
#include <string>

namespace moduli {

// Precondition violated by the caller (unstable moduli, bad series input, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A consistency assertion inside a computation failed. Always a bug or a
// genuine counterexample, never a user error.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Spectral curve data failed one of its defining identities.
class CurveBuildError : public InternalError {
 public:
  using InternalError::InternalError;
};

// y(sigma(z)) - y(z) or dx vanishes to the wrong order at a critical point.
class DegenerateRamification : public InternalError {
 public:
  using InternalError::InternalError;
};

// A recursion output exceeded the configured pole-order bound.
class PoleOrderOverflow : public InternalError {
 public:
  using InternalError::InternalError;
};

// Expansion data violates the expected parity/sign conventions.
class ConventionError : public InternalError {
 public:
  using InternalError::InternalError;
};

// Malformed or incompatible cache/table file.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad run configuration (file or flags).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace moduli
