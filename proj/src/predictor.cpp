#include "nrflow/predictor.hpp"

#include <cmath>

#include "nrflow/errors.hpp"
#include "nrflow/integration.hpp"

namespace nrflow {

namespace {

double det_magnitude(const Matrix& J) {
  return std::abs(J.partialPivLu().determinant());
}

bool effectively_singular(const Matrix& M, double tol = kSingularityTol) {
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  return det_magnitude(M) < tol * std::pow(scale, static_cast<double>(M.rows()));
}

}  // namespace

std::string_view to_string(PredictionMethod method) {
  switch (method) {
    case PredictionMethod::SimulatedFd: return "simulated-fd";
    case PredictionMethod::LtiClosedForm: return "lti-closed-form";
    case PredictionMethod::PositionClosedForm: return "position-closed-form";
    case PredictionMethod::IntegratorClosedForm: return "integrator-closed-form";
    case PredictionMethod::Memoryless: return "memoryless";
  }
  return "unknown";
}

std::string_view to_string(JacobianMethod method) {
  switch (method) {
    case JacobianMethod::Auto: return "auto";
    case JacobianMethod::ClosedForm: return "closed-form";
    case JacobianMethod::SimulatedFd: return "simulated-fd";
  }
  return "unknown";
}

Matrix matrix_exponential(const Matrix& M) {
  const Index n = M.rows();
  if (M.cols() != n) throw ArgumentError("matrix_exponential: matrix must be square");
  if (n > 16) throw ArgumentError("matrix_exponential: dimension must be <= 16");
  if (!M.allFinite()) throw NumericError("matrix_exponential: non-finite entries");
  if (n == 0) return Matrix(0, 0);

  // Degree-13 diagonal Pade approximant, applied after scaling M below the
  // kernel's accuracy radius; the squaring phase undoes the scaling.
  static constexpr double kTheta13 = 5.371920351148152;
  static constexpr double b[14] = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};

  const double norm1 = M.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
  }
  const Matrix A = M * std::ldexp(1.0, -squarings);

  const Matrix I = Matrix::Identity(n, n);
  const Matrix A2 = A * A;
  const Matrix A4 = A2 * A2;
  const Matrix A6 = A2 * A4;
  const Matrix U =
      A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 +
           b[3] * A2 + b[1] * I);
  const Matrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 +
                   b[4] * A4 + b[2] * A2 + b[0] * I;

  Matrix R = (V - U).partialPivLu().solve(V + U);
  for (int i = 0; i < squarings; ++i) R = R * R;
  return R;
}

Vector predict_output(const PlantModel& plant, const Vector& x, const Vector& u,
                      double horizon, int steps) {
  if (plant.is_memoryless()) return eval_memoryless(plant, u).first;
  if (!(horizon > 0.0)) throw ArgumentError("predict_output: horizon must be > 0");
  return eval_output(plant, integrate_const_input(plant, x, u, horizon, steps));
}

Matrix predict_jacobian_fd(const PlantModel& plant, const Vector& x, const Vector& u,
                           double horizon, int steps, double delta) {
  if (!(delta > 0.0)) throw ArgumentError("predict_jacobian_fd: delta must be > 0");
  const Index k = plant.input_dim();
  if (u.size() != k) {
    throw ArgumentError("predict_jacobian_fd: u size does not match plant input dimension");
  }
  Matrix J(k, k);
  for (Index j = 0; j < k; ++j) {
    const double dj = delta * std::max(1.0, std::abs(u[j]));
    Vector up = u;
    Vector down = u;
    up[j] += dj;
    down[j] -= dj;
    J.col(j) = (predict_output(plant, x, up, horizon, steps) -
                predict_output(plant, x, down, horizon, steps)) /
               (2.0 * dj);
  }
  if (!J.allFinite()) throw NumericError("predict_jacobian_fd: non-finite Jacobian");
  return J;
}

Prediction predict_lti_closed_form(const LtiPlant& lti, const Vector& x,
                                   const Vector& u, double horizon) {
  const Index n = lti.A.rows();
  if (x.size() != n || u.size() != lti.B.cols()) {
    throw ArgumentError("predict_lti_closed_form: x or u size mismatch");
  }
  if (effectively_singular(lti.A)) {
    throw SingularityError("A", "closed-form prediction needs a nonsingular A");
  }
  const Matrix E = matrix_exponential(lti.A * horizon);
  const Matrix J =
      lti.C * lti.A.partialPivLu().solve((E - Matrix::Identity(n, n)) * lti.B);
  if (effectively_singular(J)) {
    throw SingularityError("CA^{-1}(e^{AT}-I)B", "lookahead Jacobian is singular");
  }
  Prediction p;
  p.g_value = lti.C * (E * x) + J * u;
  p.jacobian = J;
  p.method = PredictionMethod::LtiClosedForm;
  p.jacobian_det_mag = det_magnitude(J);
  return p;
}

Prediction predict_position_closed_form(const PositionPlant& plant, const Vector& x,
                                        const Vector& u, double horizon) {
  if (x.size() != 2 || u.size() != 1) {
    throw ArgumentError("predict_position_closed_form: expects x in R^2, u in R");
  }
  if (!(horizon > 0.0)) {
    throw ArgumentError("predict_position_closed_form: horizon must be > 0");
  }
  const double a = plant.a;
  const double em1 = std::expm1(a * horizon);  // e^{aT} - 1
  const double jac = em1 / (a * a) - horizon / a;
  Prediction p;
  p.g_value = Vector::Constant(
      1, x[0] + em1 / a * x[1] + jac * u[0] - plant.r_slope * horizon);
  p.jacobian = Matrix::Constant(1, 1, jac);
  p.method = PredictionMethod::PositionClosedForm;
  p.jacobian_det_mag = std::abs(jac);
  return p;
}

Prediction predict_integrator_closed_form(const Vector& x, const Vector& u,
                                          double horizon) {
  if (x.size() != u.size()) {
    throw ArgumentError("predict_integrator_closed_form: x and u sizes differ");
  }
  Prediction p;
  p.g_value = x + horizon * u;
  p.jacobian = horizon * Matrix::Identity(x.size(), x.size());
  p.method = PredictionMethod::IntegratorClosedForm;
  p.jacobian_det_mag = std::pow(horizon, static_cast<double>(x.size()));
  return p;
}

Prediction predict(const PlantModel& plant, const Vector& x, const Vector& u,
                   double horizon, int steps, JacobianMethod method, double delta) {
  if (plant.is_memoryless()) {
    auto [g, J] = eval_memoryless(plant, u);
    return Prediction{std::move(g), J, PredictionMethod::Memoryless, det_magnitude(J)};
  }
  const bool closed =
      method == JacobianMethod::ClosedForm ||
      (method == JacobianMethod::Auto && plant.has_closed_form_predictor());
  if (closed) {
    switch (plant.kind()) {
      case PlantKind::Lti:
        return predict_lti_closed_form(plant.lti_params(), x, u, horizon);
      case PlantKind::Position:
        return predict_position_closed_form(plant.position_params(), x, u, horizon);
      case PlantKind::Integrator:
        return predict_integrator_closed_form(x, u, horizon);
      default:
        throw UnsupportedOperationError(
            "predict: no closed-form lookahead for this plant kind");
    }
  }
  Prediction p;
  p.g_value = predict_output(plant, x, u, horizon, steps);
  p.jacobian = predict_jacobian_fd(plant, x, u, horizon, steps, delta);
  p.method = PredictionMethod::SimulatedFd;
  p.jacobian_det_mag = det_magnitude(p.jacobian);
  return p;
}

}  // namespace nrflow
