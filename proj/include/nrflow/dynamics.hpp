#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "nrflow/types.hpp"

namespace nrflow {

enum class PlantKind { Memoryless, GenericOde, Lti, Position, Pendulum, Integrator };

std::string_view to_string(PlantKind kind);

/// x' = A x + B u, y = C x. A nonsingularity is only required (and checked)
/// where an inverse is actually taken: closed-form prediction and the
/// closed-loop matrix construction.
struct LtiPlant {
  Matrix A;  // n x n
  Matrix B;  // n x k
  Matrix C;  // k x n
};

/// Second-order point mass with drag, in ramp-residual coordinates:
///   x1' = x2 - r_slope,  x2' = a x2 + u,  y = x1.
struct PositionPlant {
  double a;        // drag coefficient, nonzero
  double r_slope;  // slope of the ramp target absorbed into x1
};

/// Inverted pendulum about the upper equilibrium:
///   x1' = x2,  x2' = a sin(x1) - b x2 + u,  y = x1.
struct PendulumPlant {
  double a;  // gravity-like coefficient, > 0
  double b;  // damping coefficient, > 0
};

/// Planar single integrator per axis: x' = u, y = x.
struct IntegratorPlant {
  Index k;
};

/// A plant is either a memoryless map y = g(u) or a dynamical system
/// x' = f(x, u), y = h(x). Models are immutable after construction and safe
/// to share across concurrent simulations; evaluation is pure.
class PlantModel {
 public:
  using DriftFn = std::function<Vector(const Vector&, const Vector&)>;
  using OutputFn = std::function<Vector(const Vector&)>;
  using MapFn = std::function<Vector(const Vector&)>;
  using MapJacobianFn = std::function<Matrix(const Vector&)>;

  /// Memoryless plant y = g(u) with a user-supplied analytic Jacobian.
  static PlantModel memoryless(Index k, MapFn g, MapJacobianFn dg_du,
                               std::string map_name = "custom");
  /// Arbitrary user callbacks for f and h.
  static PlantModel generic_ode(Index n, Index k, DriftFn drift, OutputFn output);
  static PlantModel lti(Matrix A, Matrix B, Matrix C);
  static PlantModel position(double a, double r_slope);
  static PlantModel pendulum(double a, double b);
  static PlantModel integrator(Index k);

  PlantKind kind() const noexcept { return kind_; }
  Index state_dim() const noexcept { return n_; }
  Index input_dim() const noexcept { return k_; }
  bool is_memoryless() const noexcept { return kind_ == PlantKind::Memoryless; }

  /// True when the lookahead output map has an exact closed form
  /// (LTI, position, integrator) or is instantaneous (memoryless).
  bool has_closed_form_predictor() const noexcept;

  const LtiPlant& lti_params() const;
  const PositionPlant& position_params() const;
  const PendulumPlant& pendulum_params() const;
  const std::string& map_name() const noexcept { return map_name_; }

  friend Vector eval_drift(const PlantModel&, const Vector&, const Vector&);
  friend Vector eval_output(const PlantModel&, const Vector&);
  friend std::pair<Vector, Matrix> eval_memoryless(const PlantModel&, const Vector&);

 private:
  PlantModel(PlantKind kind, Index n, Index k) : kind_(kind), n_(n), k_(k) {}

  PlantKind kind_;
  Index n_;
  Index k_;
  DriftFn drift_;
  OutputFn output_;
  MapFn map_;
  MapJacobianFn map_jacobian_;
  std::optional<LtiPlant> lti_;
  std::optional<PositionPlant> position_;
  std::optional<PendulumPlant> pendulum_;
  std::string map_name_;
};

/// f(x, u) for a dynamical plant.
Vector eval_drift(const PlantModel& plant, const Vector& x, const Vector& u);

/// h(x) for a dynamical plant.
Vector eval_output(const PlantModel& plant, const Vector& x);

/// (g(u), dg/du(u)) for a memoryless plant.
std::pair<Vector, Matrix> eval_memoryless(const PlantModel& plant, const Vector& u);

/// y = u, identity Jacobian.
PlantModel memoryless_identity(Index k = 1);

/// Componentwise y_i = u_i^3 + u_i, Jacobian diag(3 u_i^2 + 1).
PlantModel memoryless_cubic(Index k = 1);

}  // namespace nrflow
