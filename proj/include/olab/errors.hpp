#pragma once

#include <stdexcept>
#include <string>

namespace olab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation
/// (negative argument to a Young function, alpha >= n, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A constructor parameter violates its documented range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed, incomplete or unsupported configuration record.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A requested ball cannot be resolved on the sampling grid.
class UnrepresentableBall : public Error {
 public:
  using Error::Error;
};

}  // namespace olab
