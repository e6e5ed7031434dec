#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace conipm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Base class for everything this library throws.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation requested outside the cone interior (or tau/kappa <= 0).
class InteriorViolationError : public SolverError {
 public:
  using SolverError::SolverError;
};

// Bad dimensions, bad cone spec, or out-of-range parameters.
class ConfigurationError : public SolverError {
 public:
  using SolverError::SolverError;
};

// Singular or numerically unusable linear system / Hessian.
class ConditioningError : public SolverError {
 public:
  using SolverError::SolverError;
};

// Iterative scheme hit its iteration cap (e.g. dual point near the boundary).
class NoConvergenceError : public SolverError {
 public:
  using SolverError::SolverError;
};

// An algorithmic invariant that the step analysis guarantees was breached
// numerically. Carries the offending state for post-mortem inspection.
class InvariantViolationError : public SolverError {
 public:
  InvariantViolationError(const std::string& what, std::string phase, double prox, double bound)
      : SolverError(what), phase(std::move(phase)), proximity(prox), bound(bound) {}
  std::string phase;
  double proximity;
  double bound;
};

// Malformed or inconsistent problem file.
class ParseError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace conipm
