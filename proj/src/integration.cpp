#include "nrflow/integration.hpp"

#include <cmath>

#include "nrflow/errors.hpp"

namespace nrflow {

void StepSpec::validate() const {
  if (!(dt > 0.0)) throw ArgumentError("StepSpec: dt must be > 0");
  if (!(inner_ratio > 0.0 && inner_ratio <= 1.0)) {
    throw ArgumentError("StepSpec: inner_ratio must be in (0, 1]");
  }
  const double n = 1.0 / inner_ratio;
  if (std::abs(n - std::round(n)) > 1e-9 * n) {
    throw ArgumentError("StepSpec: 1/inner_ratio must be a positive integer");
  }
}

int StepSpec::inner_steps() const {
  validate();
  return static_cast<int>(std::llround(1.0 / inner_ratio));
}

Vector euler_step(const Vector& f_value, const Vector& x, double dt) {
  if (!(dt > 0.0)) throw ArgumentError("euler_step: dt must be > 0");
  if (f_value.size() != x.size()) {
    throw ArgumentError("euler_step: f_value and x sizes differ");
  }
  if (!x.allFinite() || !f_value.allFinite()) {
    throw NumericError("euler_step: non-finite state or drift value");
  }
  return x + dt * f_value;
}

Vector integrate_const_input(const PlantModel& plant, const Vector& x0,
                             const Vector& u, double horizon, int steps) {
  if (plant.is_memoryless()) {
    throw UnsupportedOperationError("integrate_const_input: memoryless plant has no flow");
  }
  if (!(horizon > 0.0)) throw ArgumentError("integrate_const_input: horizon must be > 0");
  if (steps < 1) throw ArgumentError("integrate_const_input: steps must be >= 1");

  const double h = horizon / steps;
  Vector x = x0;
  for (int i = 0; i < steps; ++i) {
    x += h * eval_drift(plant, x, u);
    if (!x.allFinite() || x.norm() > kDivergenceGuard) {
      throw DivergenceError("integrate_const_input: state crossed the overflow guard", i);
    }
  }
  return x;
}

}  // namespace nrflow
