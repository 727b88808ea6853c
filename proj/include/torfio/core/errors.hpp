#pragma once

#include <stdexcept>
#include <string>

namespace torfio {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mismatched dimensions, grids or boxes between arguments.
struct DimensionError : Error {
  using Error::Error;
};

/// Argument outside the domain where an operation is defined
/// (aliased frequency, too-small box, exponent <= 1, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Non-finite data or a numerical procedure that failed to converge.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace torfio
