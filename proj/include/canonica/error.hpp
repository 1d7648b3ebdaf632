#pragma once

#include <stdexcept>
#include <string>

namespace canonica {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violates an operation's precondition (wrong class, singular where
/// nonsingular is required, failed hypothesis check). Carries the offending
/// residual when one was measured, otherwise -1.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what, double residual = -1.0)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class DimensionError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Malformed serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A computation did not reach the accuracy it promises.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what, double residual = -1.0)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// An iterative kernel hit its sweep cap.
class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace canonica
