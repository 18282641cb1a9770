#include "nrflow/controller.hpp"

#include <cmath>

#include "nrflow/errors.hpp"
#include "nrflow/integration.hpp"

namespace nrflow {

void ControllerConfig::validate() const {
  if (!(horizon > 0.0)) throw ArgumentError("controller: horizon must be > 0");
  if (!(alpha > 0.0)) throw ArgumentError("controller: alpha must be > 0");
  if (!(dt > 0.0)) throw ArgumentError("controller: dt must be > 0");
  if (inner_steps < 1) throw ArgumentError("controller: inner_steps must be >= 1");
  if (!(fd_delta > 0.0)) throw ArgumentError("controller: fd_delta must be > 0");
  if (!(singularity_tol > 0.0)) throw ArgumentError("controller: singularity_tol must be > 0");
}

Vector newton_direction(const Matrix& J, const Vector& residual, double tol) {
  if (J.rows() != J.cols()) throw ArgumentError("newton_direction: J must be square");
  if (residual.size() != J.rows()) {
    throw ArgumentError("newton_direction: residual size does not match J");
  }
  auto lu = J.partialPivLu();
  // |det| scales with the k-th power of the entry magnitude, so the
  // tolerance is scaled accordingly for k > 1.
  const double scale = std::max(1.0, J.cwiseAbs().maxCoeff());
  if (std::abs(lu.determinant()) <
      tol * std::pow(scale, static_cast<double>(J.rows()))) {
    throw SingularJacobianError(J);
  }
  return lu.solve(residual);
}

Vector control_rate(const Prediction& prediction, const Vector& r_future,
                    double alpha, double tol) {
  if (r_future.size() != prediction.g_value.size()) {
    throw ArgumentError("control_rate: r_future size does not match prediction");
  }
  return alpha * newton_direction(prediction.jacobian,
                                  r_future - prediction.g_value, tol);
}

Vector discrete_nr_step(const Vector& u_prev, const Vector& y_prev,
                        const Matrix& J_prev, const Vector& r, double tol) {
  return u_prev + newton_direction(J_prev, r - y_prev, tol);
}

ClosedLoopStep closed_loop_step(const PlantModel& plant, const ControlState& state,
                                const Vector& x, const ReferenceSignal& reference,
                                const ControllerConfig& cfg) {
  cfg.validate();
  const bool memoryless = plant.is_memoryless();
  const Prediction pred = predict(plant, x, state.u, cfg.horizon, cfg.inner_steps,
                                  cfg.jacobian_method, cfg.fd_delta);
  const Vector r_future =
      memoryless ? reference.eval(state.t) : reference.eval(state.t + cfg.horizon);

  Vector u_rate;
  try {
    u_rate = control_rate(pred, r_future, cfg.alpha, cfg.singularity_tol);
  } catch (const SingularJacobianError& e) {
    throw SingularJacobianError(e.jacobian(), state.t);
  }

  ClosedLoopStep step;
  step.u_next = euler_step(u_rate, state.u, cfg.dt);
  step.x_next =
      memoryless ? x : euler_step(eval_drift(plant, x, state.u), x, cfg.dt);
  return step;
}

}  // namespace nrflow
