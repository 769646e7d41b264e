#pragma once

#include <stdexcept>
#include <string>

namespace ncinterp {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (coefficient sizes, tuple dimensions, n_vars).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be inverted is singular or too badly conditioned.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Input data violate a documented precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace ncinterp
