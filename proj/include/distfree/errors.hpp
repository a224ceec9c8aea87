#pragma once

#include <stdexcept>
#include <string>

namespace distfree {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point or set lies outside the domain an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// (+inf) + (-inf), 0 * inf, or a NaN reaching an extended real.
class IndeterminateForm : public Error {
 public:
  using Error::Error;
};

/// An object could not be built from the given pieces.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A scalar parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Bad user-provided data (empty samples, malformed records).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An estimator or experiment is not runnable on the given family.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Enumeration limits exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A loaded artifact failed re-verification.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace distfree
