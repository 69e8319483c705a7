#pragma once

#include <stdexcept>
#include <string>

namespace uniprobe {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes or subsystem dimensions do not fit together.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A value violates the invariant of the type it is being wrapped in.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Arguments are well formed but outside what the operation accepts.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold. Distinct from a
/// negative answer.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical routine did not converge.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace uniprobe
