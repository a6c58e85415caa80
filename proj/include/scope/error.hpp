#pragma once

#include <stdexcept>
#include <string>

namespace scope {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: wrong dimensions, non-finite entries, bad parameters.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be positive definite is (numerically) singular.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// A scalar-matrix argument where the formula needs a non-scalar spectrum.
class ScalarMatrix : public Error {
 public:
  using Error::Error;
};

/// The all-zero matrix where a scale is required.
class ZeroMatrix : public Error {
 public:
  using Error::Error;
};

/// Requested combination of options is not supported (e.g. plug-in radius for
/// a Frobenius-type divergence).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// An iterative routine exhausted its iteration budget.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Both variance terms of a z-score vanish.
class DegenerateVariance : public Error {
 public:
  using Error::Error;
};

}  // namespace scope
