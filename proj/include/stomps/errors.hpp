#pragma once

#include <stdexcept>
#include <string>

namespace stomps {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (coordinate off the grid,
/// evaluation at a singular point, index out of range).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid combination of inputs that the caller can fix by reconfiguring,
/// e.g. a potential centre that collides with a grid point.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Requested problem exceeds the dense-storage ceiling.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing an artifact failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace stomps
