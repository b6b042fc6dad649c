#pragma once

#include <stdexcept>
#include <string>

namespace abkit {

/// Base of every numerical failure raised by the toolkit.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field evaluated to a non-finite value somewhere it was needed.
class EvaluationError : public NumericalError {
 public:
  EvaluationError(const std::string& what, double location)
      : NumericalError(what), location_(location) {}
  /// Parameter value (path parameter, radius, ...) at which evaluation failed.
  double location() const noexcept { return location_; }

 private:
  double location_;
};

/// Adaptive routine ran out of budget; carries the best estimate reached.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : NumericalError(what), best_(best_estimate), error_(error_estimate) {}
  double best_estimate() const noexcept { return best_; }
  double error_estimate() const noexcept { return error_; }

 private:
  double best_;
  double error_;
};

/// Finite-difference stencil touched a point where the function failed.
class StencilError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Evaluation point too close to the solenoid current sheet.
class NearSingularError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Geometry where boundary integrals lose conditioning.
class IllConditionedGeometryError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// ODE integration failed to meet its tolerance.
class IntegrationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Input violates a documented precondition of an operation.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace abkit
