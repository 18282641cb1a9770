#pragma once

#include "nrflow/dynamics.hpp"
#include "nrflow/predictor.hpp"
#include "nrflow/reference.hpp"
#include "nrflow/types.hpp"

namespace nrflow {

/// Tuning of the lookahead Newton-Raphson-flow controller.
struct ControllerConfig {
  double horizon = 1.0;     // lookahead T; ignored for memoryless plants
  double alpha = 1.0;       // speedup gain on the control rate
  double dt = 0.01;         // outer Euler step
  int inner_steps = 100;    // N inner Euler steps, step size horizon / N
  JacobianMethod jacobian_method = JacobianMethod::Auto;
  double fd_delta = kDefaultFdDelta;
  double singularity_tol = kSingularityTol;

  void validate() const;
};

struct ControlState {
  Vector u;
  double t = 0.0;
};

/// Solves J d = residual with a direct dense solve; throws
/// SingularJacobianError when |det J| falls below the (norm-scaled) tolerance.
Vector newton_direction(const Matrix& J, const Vector& residual,
                        double tol = kSingularityTol);

/// Control rate of the Newton-Raphson flow:
///   du/dt = alpha J^{-1} (r_future - g(u)).
/// r_future is r(t) for memoryless plants and r(t + horizon) otherwise;
/// the caller supplies the already-evaluated value.
Vector control_rate(const Prediction& prediction, const Vector& r_future,
                    double alpha, double tol = kSingularityTol);

/// One discrete Newton-Raphson iterate toward g(u) = r:
///   u = u_prev + J_prev^{-1} (r - y_prev),
/// the variable-gain-integrator form of the controller.
Vector discrete_nr_step(const Vector& u_prev, const Vector& y_prev,
                        const Matrix& J_prev, const Vector& r,
                        double tol = kSingularityTol);

struct ClosedLoopStep {
  Vector x_next;
  Vector u_next;
};

/// Advances plant state and control input by one outer Euler step. Both
/// updates use start-of-step values (simultaneous update), so the discrete
/// loop is the uniform discretization of the joint (x, u) dynamics.
ClosedLoopStep closed_loop_step(const PlantModel& plant, const ControlState& state,
                                const Vector& x, const ReferenceSignal& reference,
                                const ControllerConfig& cfg);

}  // namespace nrflow
