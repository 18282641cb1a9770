#pragma once

#include "nrflow/dynamics.hpp"
#include "nrflow/types.hpp"

namespace nrflow {

/// Step sizes for the two nested loops: the outer closed loop advances by dt,
/// the inner lookahead simulation uses N = 1/inner_ratio steps of size
/// inner_ratio * horizon.
struct StepSpec {
  double dt = 0.01;
  double inner_ratio = 0.01;

  void validate() const;
  int inner_steps() const;  // N = 1 / inner_ratio
};

/// One forward-Euler update x + dt * f_value.
Vector euler_step(const Vector& f_value, const Vector& x, double dt);

/// Euler approximation of the constant-input flow: integrates x' = f(x, u)
/// from x0 over [0, horizon] in `steps` equal steps with u held fixed.
/// Throws DivergenceError when the state norm crosses the overflow guard.
Vector integrate_const_input(const PlantModel& plant, const Vector& x0,
                             const Vector& u, double horizon, int steps);

}  // namespace nrflow
