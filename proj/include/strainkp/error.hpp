#pragma once

#include <stdexcept>
#include <string>

namespace strainkp {

// Base of every error thrown by the library. The CLI maps the concrete
// subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameter-table parsing or validation failure.
class LoadError : public Error {
 public:
  using Error::Error;
};

/// Input outside the physical or numerical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Solver failure, or a result that violates its own contract.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace strainkp
