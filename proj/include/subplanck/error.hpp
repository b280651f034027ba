#pragma once

#include <stdexcept>
#include <string>

namespace subplanck {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: bad grid, support escaping the grid, mismatched shapes,
/// out-of-Nyquist displacement. Maps to CLI exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain where a numerical routine is defined
/// (e.g. Bessel order beyond 2000). Maps to CLI exit code 4.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The analysis cannot be applied to the given data (no ringing, no fringes).
/// Maps to CLI exit code 3.
class NotApplicableError : public Error {
 public:
  using Error::Error;
};

}  // namespace subplanck
