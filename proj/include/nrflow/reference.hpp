#pragma once

#include <string_view>

#include "nrflow/types.hpp"

namespace nrflow {

enum class ReferenceKind { Constant, RampResidual, Sinusoid, CirclePoint };

std::string_view to_string(ReferenceKind kind);

/// Target signal r(t), evaluable at any t >= 0 and ahead of time (preview at
/// t + horizon). All kinds are analytic; the platoon harness feeds followers
/// freshly built constants to hold a computed target over one step.
class ReferenceSignal {
 public:
  static ReferenceSignal constant(Vector value);
  /// Identically zero: the residual form of ramp tracking.
  static ReferenceSignal ramp_residual(Index dim = 1);
  /// offset + amplitude * sin(omega t), scalar.
  static ReferenceSignal sinusoid(double offset, double amplitude, double omega);
  /// Point moving on a circle: center + radius (cos, sin)(theta0 + omega t).
  static ReferenceSignal circle_point(const Eigen::Vector2d& center, double radius,
                                      double theta0, double omega);

  Vector eval(double t) const;
  Index dim() const noexcept;
  ReferenceKind kind() const noexcept { return kind_; }

  /// sup over t of ||r'(t)||.
  double sup_rate() const;

  // Parameter accessors for serialization.
  const Vector& value() const { return value_; }
  double offset() const { return offset_; }
  double amplitude() const { return amplitude_; }
  double omega() const { return omega_; }
  Eigen::Vector2d center() const { return center_; }
  double radius() const { return radius_; }
  double theta0() const { return theta0_; }

 private:
  explicit ReferenceSignal(ReferenceKind kind) : kind_(kind) {}

  ReferenceKind kind_;
  Vector value_;
  double offset_ = 0.0, amplitude_ = 0.0, omega_ = 0.0;
  Eigen::Vector2d center_{0.0, 0.0};
  double radius_ = 0.0, theta0_ = 0.0;
};

}  // namespace nrflow
