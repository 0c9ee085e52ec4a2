#pragma once

#include <stdexcept>
#include <string>

namespace convex_enclose {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: the caller asked for something the hypotheses do not cover.
// The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

// The inputs were fine but a computation could not finish.
// The CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

class NotDifferentiableError : public InputError {
 public:
  using InputError::InputError;
};

class DegenerateSlopesError : public InputError {
 public:
  using InputError::InputError;
};

class InvalidDistributionError : public InputError {
 public:
  using InputError::InputError;
};

class UnboundedSlopeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// inf - inf, 0 * inf and friends.
class ArithmeticError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class OracleFailureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InconsistentModelError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// A bound that the theory guarantees came out violated. Signals a kernel or
// function that is not actually convex (or not normalized).
class InternalInconsistencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace convex_enclose
