#include "nrflow/reference.hpp"

#include <cmath>

#include "nrflow/errors.hpp"

namespace nrflow {

std::string_view to_string(ReferenceKind kind) {
  switch (kind) {
    case ReferenceKind::Constant: return "constant";
    case ReferenceKind::RampResidual: return "ramp-residual";
    case ReferenceKind::Sinusoid: return "sinusoid";
    case ReferenceKind::CirclePoint: return "circle-point";
  }
  return "unknown";
}

ReferenceSignal ReferenceSignal::constant(Vector value) {
  if (value.size() < 1) throw ArgumentError("constant reference: empty value");
  ReferenceSignal r(ReferenceKind::Constant);
  r.value_ = std::move(value);
  return r;
}

ReferenceSignal ReferenceSignal::ramp_residual(Index dim) {
  if (dim < 1) throw ArgumentError("ramp-residual reference: dim must be >= 1");
  ReferenceSignal r(ReferenceKind::RampResidual);
  r.value_ = Vector::Zero(dim);
  return r;
}

ReferenceSignal ReferenceSignal::sinusoid(double offset, double amplitude,
                                          double omega) {
  ReferenceSignal r(ReferenceKind::Sinusoid);
  r.offset_ = offset;
  r.amplitude_ = amplitude;
  r.omega_ = omega;
  return r;
}

ReferenceSignal ReferenceSignal::circle_point(const Eigen::Vector2d& center,
                                              double radius, double theta0,
                                              double omega) {
  if (!(radius > 0.0)) throw ArgumentError("circle-point reference: radius must be > 0");
  ReferenceSignal r(ReferenceKind::CirclePoint);
  r.center_ = center;
  r.radius_ = radius;
  r.theta0_ = theta0;
  r.omega_ = omega;
  return r;
}

Vector ReferenceSignal::eval(double t) const {
  switch (kind_) {
    case ReferenceKind::Constant:
    case ReferenceKind::RampResidual:
      return value_;
    case ReferenceKind::Sinusoid:
      return Vector::Constant(1, offset_ + amplitude_ * std::sin(omega_ * t));
    case ReferenceKind::CirclePoint: {
      const double theta = theta0_ + omega_ * t;
      Vector r(2);
      r << center_.x() + radius_ * std::cos(theta),
          center_.y() + radius_ * std::sin(theta);
      return r;
    }
  }
  throw ArgumentError("reference: unknown kind");
}

Index ReferenceSignal::dim() const noexcept {
  switch (kind_) {
    case ReferenceKind::Constant:
    case ReferenceKind::RampResidual:
      return value_.size();
    case ReferenceKind::Sinusoid:
      return 1;
    case ReferenceKind::CirclePoint:
      return 2;
  }
  return 0;
}

double ReferenceSignal::sup_rate() const {
  switch (kind_) {
    case ReferenceKind::Constant:
    case ReferenceKind::RampResidual:
      return 0.0;
    case ReferenceKind::Sinusoid:
      return std::abs(amplitude_ * omega_);
    case ReferenceKind::CirclePoint:
      return std::abs(radius_ * omega_);
  }
  return 0.0;
}

}  // namespace nrflow
