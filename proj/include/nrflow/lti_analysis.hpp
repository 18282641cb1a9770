#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "nrflow/dynamics.hpp"
#include "nrflow/types.hpp"

namespace nrflow {

enum class StabilityVerdict { Stable, Marginal, Unstable };

std::string_view to_string(StabilityVerdict verdict);

/// First column of the Routh table. A zero pivot stops the construction and
/// sets `indeterminate` instead of being epsilon-perturbed.
struct RouthResult {
  std::vector<double> first_column;
  bool indeterminate = false;
  Index zero_pivot_index = -1;  // position in first_column when indeterminate
};

struct StabilityReport {
  Matrix phi;        // closed-loop matrix of the joint (x, u) dynamics
  Matrix psi;        // reference feed matrix; empty for the position system
  Vector char_poly;  // monic coefficients, highest power first
  RouthResult routh;
  double max_real_eigenvalue = 0.0;
  StabilityVerdict hurwitz = StabilityVerdict::Unstable;
};

/// Closed-loop matrices of the lookahead Newton-Raphson flow around an LTI
/// plant, with the control rows scaled by alpha:
///   phi = [ A, B; -alpha J^{-1} C e^{AT}, -alpha I_k ],  psi = alpha J^{-1},
/// where J = C A^{-1} (e^{AT} - I) B. Requires A and J nonsingular.
std::pair<Matrix, Matrix> build_phi_psi(const LtiPlant& lti, double horizon,
                                        double alpha);

/// Closed-loop matrix of the position system, whose A is singular and so has
/// its own closed form; alpha scales the last row.
Eigen::Matrix3d position_phi(double a, double horizon, double alpha);

/// Characteristic polynomial of position_phi, in closed form:
///   [1, alpha - a, alpha a^2 T / D, alpha a^2 / D],  D = e^{aT} - 1 - aT.
Eigen::Vector4d position_char_poly(double a, double horizon, double alpha);

/// Routh first column for a monic polynomial (coefficients highest power
/// first, degree >= 1).
RouthResult routh_first_column(const Vector& coeffs);

/// Closed-form stability verdict for the position system:
/// stable iff a < alpha and horizon > 1 / (alpha - a); marginal on the boundary.
StabilityVerdict position_stability_condition(double a, double horizon, double alpha);

/// Maximum real part of the spectrum, dense solver, dimension <= 10.
double eigen_max_real(const Matrix& M);

/// Characteristic polynomial coefficients (monic, highest power first) via
/// the Faddeev-LeVerrier trace recursion; determinant-based, no eigensolve.
Vector char_poly(const Matrix& M);

StabilityVerdict verdict_from_max_real(double max_real, double eps = kMarginalEps);
StabilityVerdict verdict_from_routh(const RouthResult& routh);

StabilityReport analyze_lti(const LtiPlant& lti, double horizon, double alpha);
StabilityReport analyze_position(double a, double horizon, double alpha);

}  // namespace nrflow
