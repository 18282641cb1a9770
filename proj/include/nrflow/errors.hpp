#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "nrflow/types.hpp"

namespace nrflow {

/// Bad argument values or violated construction invariants.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation is not defined for the given plant kind.
class UnsupportedOperationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Non-finite values or a failed numeric iteration.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// State norm crossed the overflow guard during integration.
class DivergenceError : public NumericError {
 public:
  DivergenceError(const std::string& message, long step_index,
                  double time = std::nan(""))
      : NumericError(message + " (step " + std::to_string(step_index) + ")"),
        step_index_(step_index),
        time_(time) {}

  long step_index() const noexcept { return step_index_; }
  double time() const noexcept { return time_; }

 private:
  long step_index_;
  double time_;
};

/// A matrix that must be inverted has |det| below tolerance.
class SingularityError : public NumericError {
 public:
  explicit SingularityError(const std::string& matrix_name,
                            const std::string& detail = "")
      : NumericError("singular matrix " + matrix_name +
                     (detail.empty() ? "" : ": " + detail)),
        matrix_name_(matrix_name) {}

  const std::string& matrix_name() const noexcept { return matrix_name_; }

 private:
  std::string matrix_name_;
};

/// The controller's loop-map Jacobian is numerically singular. Carries the
/// offending matrix and, when known, the simulation time.
class SingularJacobianError : public SingularityError {
 public:
  explicit SingularJacobianError(Matrix jacobian, double time = std::nan(""))
      : SingularityError("dg/du", std::isnan(time)
                                      ? "|det| below tolerance"
                                      : "|det| below tolerance at t = " +
                                            std::to_string(time)),
        jacobian_(std::move(jacobian)),
        time_(time) {}

  const Matrix& jacobian() const noexcept { return jacobian_; }
  double time() const noexcept { return time_; }

 private:
  Matrix jacobian_;
  double time_;
};

}  // namespace nrflow
