#pragma once

#include <stdexcept>
#include <string>

namespace qaw {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition (q range, support membership, |rho| < 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A Pochhammer denominator vanished; the value is undefined at this parameter point.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// An infinite product or series hit its term cap before the stopping bound was met.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature exhausted its panel budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A value that must be real came out of complex arithmetic with a non-negligible imaginary part.
class RealnessError : public Error {
 public:
  using Error::Error;
};

}  // namespace qaw
