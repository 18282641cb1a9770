#include "nrflow/dynamics.hpp"

#include <cmath>

#include "nrflow/errors.hpp"

namespace nrflow {

namespace {

void check_size(const char* op, const char* name, const Vector& v, Index expected) {
  if (v.size() != expected) {
    throw ArgumentError(std::string(op) + ": " + name + " has size " +
                        std::to_string(v.size()) + ", plant expects " +
                        std::to_string(expected));
  }
}

}  // namespace

std::string_view to_string(PlantKind kind) {
  switch (kind) {
    case PlantKind::Memoryless: return "memoryless";
    case PlantKind::GenericOde: return "generic-ode";
    case PlantKind::Lti: return "lti";
    case PlantKind::Position: return "position";
    case PlantKind::Pendulum: return "pendulum";
    case PlantKind::Integrator: return "integrator";
  }
  return "unknown";
}

PlantModel PlantModel::memoryless(Index k, MapFn g, MapJacobianFn dg_du,
                                  std::string map_name) {
  if (k < 1) throw ArgumentError("memoryless plant: k must be >= 1");
  if (!g || !dg_du) throw ArgumentError("memoryless plant: g and dg/du are required");
  PlantModel p(PlantKind::Memoryless, 0, k);
  p.map_ = std::move(g);
  p.map_jacobian_ = std::move(dg_du);
  p.map_name_ = std::move(map_name);
  return p;
}

PlantModel PlantModel::generic_ode(Index n, Index k, DriftFn drift, OutputFn output) {
  if (n < 1 || k < 1) throw ArgumentError("generic-ode plant: n and k must be >= 1");
  if (!drift || !output) throw ArgumentError("generic-ode plant: drift and output are required");
  PlantModel p(PlantKind::GenericOde, n, k);
  p.drift_ = std::move(drift);
  p.output_ = std::move(output);
  return p;
}

PlantModel PlantModel::lti(Matrix A, Matrix B, Matrix C) {
  const Index n = A.rows();
  const Index k = B.cols();
  if (n < 1 || A.cols() != n) throw ArgumentError("lti plant: A must be square and nonempty");
  if (B.rows() != n) throw ArgumentError("lti plant: B must be n x k");
  if (C.rows() != k || C.cols() != n) throw ArgumentError("lti plant: C must be k x n");
  PlantModel p(PlantKind::Lti, n, k);
  p.lti_ = LtiPlant{A, B, C};
  p.drift_ = [A, B](const Vector& x, const Vector& u) -> Vector { return A * x + B * u; };
  p.output_ = [C](const Vector& x) -> Vector { return C * x; };
  return p;
}

PlantModel PlantModel::position(double a, double r_slope) {
  if (a == 0.0) throw ArgumentError("position plant: a != 0 is required");
  PlantModel p(PlantKind::Position, 2, 1);
  p.position_ = PositionPlant{a, r_slope};
  p.drift_ = [a, r_slope](const Vector& x, const Vector& u) -> Vector {
    Vector dx(2);
    dx << x[1] - r_slope, a * x[1] + u[0];
    return dx;
  };
  p.output_ = [](const Vector& x) -> Vector { return x.head(1); };
  return p;
}

PlantModel PlantModel::pendulum(double a, double b) {
  if (a <= 0.0) throw ArgumentError("pendulum plant: a > 0 is required");
  if (b <= 0.0) throw ArgumentError("pendulum plant: b > 0 is required");
  PlantModel p(PlantKind::Pendulum, 2, 1);
  p.pendulum_ = PendulumPlant{a, b};
  p.drift_ = [a, b](const Vector& x, const Vector& u) -> Vector {
    Vector dx(2);
    dx << x[1], a * std::sin(x[0]) - b * x[1] + u[0];
    return dx;
  };
  p.output_ = [](const Vector& x) -> Vector { return x.head(1); };
  return p;
}

PlantModel PlantModel::integrator(Index k) {
  if (k < 1) throw ArgumentError("integrator plant: k must be >= 1");
  PlantModel p(PlantKind::Integrator, k, k);
  p.drift_ = [](const Vector&, const Vector& u) -> Vector { return u; };
  p.output_ = [](const Vector& x) -> Vector { return x; };
  return p;
}

bool PlantModel::has_closed_form_predictor() const noexcept {
  switch (kind_) {
    case PlantKind::Memoryless:
    case PlantKind::Lti:
    case PlantKind::Position:
    case PlantKind::Integrator:
      return true;
    default:
      return false;
  }
}

const LtiPlant& PlantModel::lti_params() const {
  if (!lti_) throw UnsupportedOperationError("plant is not lti");
  return *lti_;
}

const PositionPlant& PlantModel::position_params() const {
  if (!position_) throw UnsupportedOperationError("plant is not position");
  return *position_;
}

const PendulumPlant& PlantModel::pendulum_params() const {
  if (!pendulum_) throw UnsupportedOperationError("plant is not pendulum");
  return *pendulum_;
}

Vector eval_drift(const PlantModel& plant, const Vector& x, const Vector& u) {
  if (plant.is_memoryless()) {
    throw UnsupportedOperationError("eval_drift: memoryless plant has no state dynamics");
  }
  check_size("eval_drift", "x", x, plant.n_);
  check_size("eval_drift", "u", u, plant.k_);
  return plant.drift_(x, u);
}

Vector eval_output(const PlantModel& plant, const Vector& x) {
  if (plant.is_memoryless()) {
    throw UnsupportedOperationError(
        "eval_output: memoryless output is a function of u; use eval_memoryless");
  }
  check_size("eval_output", "x", x, plant.n_);
  return plant.output_(x);
}

std::pair<Vector, Matrix> eval_memoryless(const PlantModel& plant, const Vector& u) {
  if (!plant.is_memoryless()) {
    throw UnsupportedOperationError("eval_memoryless: plant has state dynamics");
  }
  check_size("eval_memoryless", "u", u, plant.k_);
  return {plant.map_(u), plant.map_jacobian_(u)};
}

PlantModel memoryless_identity(Index k) {
  return PlantModel::memoryless(
      k, [](const Vector& u) -> Vector { return u; },
      [k](const Vector&) -> Matrix { return Matrix::Identity(k, k); }, "identity");
}

PlantModel memoryless_cubic(Index k) {
  return PlantModel::memoryless(
      k,
      [](const Vector& u) -> Vector { return u.array().cube() + u.array(); },
      [](const Vector& u) -> Matrix {
        return Matrix((3.0 * u.array().square() + 1.0).matrix().asDiagonal());
      },
      "cubic");
}

}  // namespace nrflow
