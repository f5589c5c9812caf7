#pragma once

#include <stdexcept>
#include <string>

namespace rootrefine {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition or input contract does not hold.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A contour point lies too close to a root of the polynomial; the
/// isolation certificate of the disc should be re-established.
class ContourProximityError : public Error {
 public:
  using Error::Error;
};

/// Newton iteration stopped contracting quadratically.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// The working precision cannot deliver the requested accuracy.
class InsufficientPrecision : public Error {
 public:
  using Error::Error;
};

}  // namespace rootrefine
