#pragma once

#include <stdexcept>
#include <string>

namespace dinaq {

/// Caller supplied a value outside an operation's domain.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Configuration is structurally valid but beyond supported limits
/// (e.g. attribute count above the dense pattern-table ceiling).
class UnsupportedConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Matrix factorization failed (non positive definite input).
class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state the algorithm cannot reach with valid inputs was reached.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed config file or unknown key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read, parsed, or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dinaq
