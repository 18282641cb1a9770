#pragma once

#include <string_view>

#include "nrflow/dynamics.hpp"
#include "nrflow/types.hpp"

namespace nrflow {

enum class PredictionMethod {
  SimulatedFd,
  LtiClosedForm,
  PositionClosedForm,
  IntegratorClosedForm,
  Memoryless,
};

/// How the controller obtains the lookahead map and its Jacobian.
/// Auto picks the closed form when the plant has one, else falls back to
/// inner simulation with central finite differences.
enum class JacobianMethod { Auto, ClosedForm, SimulatedFd };

std::string_view to_string(PredictionMethod method);
std::string_view to_string(JacobianMethod method);

/// Lookahead output map evaluated at one (x, u): the predicted output at
/// t + horizon under constant input, and its Jacobian with respect to u.
struct Prediction {
  Vector g_value;
  Matrix jacobian;
  PredictionMethod method;
  double jacobian_det_mag;  // |det| recorded for singularity diagnostics
};

/// e^M for small dense real matrices (dimension <= 16), by scaling and
/// squaring with a degree-13 Pade kernel.
Matrix matrix_exponential(const Matrix& M);

/// g(u) = h(flow(x, u, horizon)) via inner Euler simulation with `steps`
/// steps. Memoryless plants short-circuit to the instantaneous map.
Vector predict_output(const PlantModel& plant, const Vector& x, const Vector& u,
                      double horizon, int steps);

/// Central finite-difference Jacobian of the discretized lookahead map.
/// Column j uses perturbation delta * max(1, |u_j|), so the same inner step
/// count means the Jacobian is consistent with the g actually inverted.
Matrix predict_jacobian_fd(const PlantModel& plant, const Vector& x, const Vector& u,
                           double horizon, int steps, double delta = kDefaultFdDelta);

/// Exact lookahead map for x' = Ax + Bu, y = Cx:
///   g(u) = C (e^{AT} x + A^{-1}(e^{AT} - I) B u),  dg/du = C A^{-1}(e^{AT} - I) B.
/// Requires A and the Jacobian to be nonsingular.
Prediction predict_lti_closed_form(const LtiPlant& lti, const Vector& x,
                                   const Vector& u, double horizon);

/// Exact lookahead map for the position plant (whose A is singular):
///   g(u) = x1 + (e^{aT}-1)/a x2 + ((e^{aT}-1)/a^2 - T/a) u - r_slope T.
Prediction predict_position_closed_form(const PositionPlant& plant, const Vector& x,
                                        const Vector& u, double horizon);

/// Exact lookahead map for x' = u: g(u) = x + T u, Jacobian T I.
Prediction predict_integrator_closed_form(const Vector& x, const Vector& u,
                                          double horizon);

/// Dispatch on plant kind and requested method.
Prediction predict(const PlantModel& plant, const Vector& x, const Vector& u,
                   double horizon, int steps,
                   JacobianMethod method = JacobianMethod::Auto,
                   double delta = kDefaultFdDelta);

}  // namespace nrflow
