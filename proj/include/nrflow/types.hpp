#pragma once

#include <Eigen/Dense>

namespace nrflow {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Eigen::Index;

/// State-norm ceiling for simulations; crossing it marks a run as diverged
/// instead of letting values overflow.
inline constexpr double kDivergenceGuard = 1e12;

/// Default |det| threshold below which a Jacobian is treated as singular.
inline constexpr double kSingularityTol = 1e-12;

/// Half-width of the marginal band around zero for eigenvalue verdicts.
inline constexpr double kMarginalEps = 1e-9;

/// Default base perturbation for finite-difference Jacobians.
inline constexpr double kDefaultFdDelta = 1e-5;

}  // namespace nrflow
