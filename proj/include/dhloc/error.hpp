#pragma once

#include <stdexcept>
#include <string>

namespace dhloc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: malformed space files, bad arguments, out-of-range parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A computation ran but its result cannot be trusted (wall hit, non-real
/// density, non-convergent summation or quadrature).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace dhloc
