#include "nrflow/lti_analysis.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "nrflow/errors.hpp"
#include "nrflow/predictor.hpp"

namespace nrflow {

namespace {

bool effectively_singular(const Matrix& M, double tol = kSingularityTol) {
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  return std::abs(M.partialPivLu().determinant()) <
         tol * std::pow(scale, static_cast<double>(M.rows()));
}

// e^{aT} - 1 - aT, positive for every a != 0, T > 0. expm1 keeps the small
// |aT| regime accurate.
double gap_denominator(double a, double horizon) {
  if (a == 0.0) throw ArgumentError("position analysis: a != 0 is required");
  if (!(horizon > 0.0)) throw ArgumentError("position analysis: horizon must be > 0");
  return std::expm1(a * horizon) - a * horizon;
}

}  // namespace

std::string_view to_string(StabilityVerdict verdict) {
  switch (verdict) {
    case StabilityVerdict::Stable: return "stable";
    case StabilityVerdict::Marginal: return "marginal";
    case StabilityVerdict::Unstable: return "unstable";
  }
  return "unknown";
}

std::pair<Matrix, Matrix> build_phi_psi(const LtiPlant& lti, double horizon,
                                        double alpha) {
  const Index n = lti.A.rows();
  const Index k = lti.B.cols();
  if (!(horizon > 0.0)) throw ArgumentError("build_phi_psi: horizon must be > 0");
  if (!(alpha > 0.0)) throw ArgumentError("build_phi_psi: alpha must be > 0");
  if (effectively_singular(lti.A)) {
    throw SingularityError("A", "closed-loop construction needs a nonsingular A");
  }
  const Matrix E = matrix_exponential(lti.A * horizon);
  const Matrix J =
      lti.C * lti.A.partialPivLu().solve((E - Matrix::Identity(n, n)) * lti.B);
  if (effectively_singular(J)) {
    throw SingularityError("CA^{-1}(e^{AT}-I)B", "lookahead Jacobian is singular");
  }
  const Matrix J_inv = J.partialPivLu().inverse();

  Matrix phi(n + k, n + k);
  phi.topLeftCorner(n, n) = lti.A;
  phi.topRightCorner(n, k) = lti.B;
  phi.bottomLeftCorner(k, n) = -alpha * J_inv * lti.C * E;
  phi.bottomRightCorner(k, k) = -alpha * Matrix::Identity(k, k);
  return {phi, alpha * J_inv};
}

Eigen::Matrix3d position_phi(double a, double horizon, double alpha) {
  const double d = gap_denominator(a, horizon);
  Eigen::Matrix3d phi;
  phi << 0.0, 1.0, 0.0,
      0.0, a, 1.0,
      -alpha * a * a / d, -alpha * a * std::expm1(a * horizon) / d, -alpha;
  return phi;
}

Eigen::Vector4d position_char_poly(double a, double horizon, double alpha) {
  const double d = gap_denominator(a, horizon);
  return {1.0, alpha - a, alpha * a * a * horizon / d, alpha * a * a / d};
}

RouthResult routh_first_column(const Vector& coeffs) {
  const Index degree = coeffs.size() - 1;
  if (degree < 1) throw ArgumentError("routh_first_column: degree must be >= 1");
  if (std::abs(coeffs[0] - 1.0) > 1e-12) {
    throw ArgumentError("routh_first_column: polynomial must be monic");
  }

  // Rows of the Routh table, built pairwise; only the leading entries are
  // reported. width = number of entries per row, padded with zeros.
  const Index width = degree / 2 + 1;
  std::vector<double> prev(width, 0.0), curr(width, 0.0);
  for (Index i = 0; i <= degree; i += 2) prev[i / 2] = coeffs[i];
  for (Index i = 1; i <= degree; i += 2) curr[(i - 1) / 2] = coeffs[i];

  RouthResult result;
  result.first_column.push_back(prev[0]);
  if (degree == 1) {
    result.first_column.push_back(curr[0]);
    return result;
  }
  result.first_column.push_back(curr[0]);

  for (Index row = 2; row <= degree; ++row) {
    double scale = 1.0;
    for (Index j = 0; j < width; ++j) {
      scale = std::max({scale, std::abs(prev[j]), std::abs(curr[j])});
    }
    if (std::abs(curr[0]) <= 1e-12 * scale) {
      result.indeterminate = true;
      result.zero_pivot_index = static_cast<Index>(result.first_column.size()) - 1;
      return result;
    }
    std::vector<double> next(width, 0.0);
    for (Index j = 0; j + 1 < width; ++j) {
      next[j] = (curr[0] * prev[j + 1] - prev[0] * curr[j + 1]) / curr[0];
    }
    result.first_column.push_back(next[0]);
    prev = std::move(curr);
    curr = std::move(next);
  }
  return result;
}

StabilityVerdict position_stability_condition(double a, double horizon,
                                              double alpha) {
  if (a == 0.0) throw ArgumentError("position analysis: a != 0 is required");
  if (!(horizon > 0.0)) throw ArgumentError("position analysis: horizon must be > 0");
  if (!(alpha > 0.0)) throw ArgumentError("position analysis: alpha must be > 0");

  const double margin = alpha - a;
  if (std::abs(margin) <= 1e-12 * std::max(1.0, std::abs(alpha))) {
    return StabilityVerdict::Marginal;
  }
  if (margin < 0.0) return StabilityVerdict::Unstable;
  const double critical = 1.0 / margin;
  if (std::abs(horizon - critical) <= 1e-12 * std::max(1.0, critical)) {
    return StabilityVerdict::Marginal;
  }
  return horizon > critical ? StabilityVerdict::Stable : StabilityVerdict::Unstable;
}

double eigen_max_real(const Matrix& M) {
  if (M.rows() != M.cols()) throw ArgumentError("eigen_max_real: matrix must be square");
  if (M.rows() < 1 || M.rows() > 10) {
    throw ArgumentError("eigen_max_real: dimension must be in [1, 10]");
  }
  if (!M.allFinite()) throw NumericError("eigen_max_real: non-finite entries");
  Eigen::EigenSolver<Matrix> solver(M, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigen_max_real: eigenvalue iteration did not converge");
  }
  return solver.eigenvalues().real().maxCoeff();
}

Vector char_poly(const Matrix& M) {
  const Index n = M.rows();
  if (M.cols() != n || n < 1) throw ArgumentError("char_poly: matrix must be square");
  Vector coeffs(n + 1);
  coeffs[0] = 1.0;
  Matrix work = Matrix::Zero(n, n);
  for (Index k = 1; k <= n; ++k) {
    work = M * (work + coeffs[k - 1] * Matrix::Identity(n, n));
    coeffs[k] = -work.trace() / static_cast<double>(k);
  }
  return coeffs;
}

StabilityVerdict verdict_from_max_real(double max_real, double eps) {
  if (max_real < -eps) return StabilityVerdict::Stable;
  if (max_real > eps) return StabilityVerdict::Unstable;
  return StabilityVerdict::Marginal;
}

StabilityVerdict verdict_from_routh(const RouthResult& routh) {
  if (routh.indeterminate) return StabilityVerdict::Marginal;
  for (double entry : routh.first_column) {
    if (entry <= 0.0) return StabilityVerdict::Unstable;
  }
  return StabilityVerdict::Stable;
}

StabilityReport analyze_lti(const LtiPlant& lti, double horizon, double alpha) {
  StabilityReport report;
  std::tie(report.phi, report.psi) = build_phi_psi(lti, horizon, alpha);
  report.char_poly = char_poly(report.phi);
  report.routh = routh_first_column(report.char_poly);
  report.max_real_eigenvalue = eigen_max_real(report.phi);
  report.hurwitz = verdict_from_max_real(report.max_real_eigenvalue);
  return report;
}

StabilityReport analyze_position(double a, double horizon, double alpha) {
  StabilityReport report;
  report.phi = position_phi(a, horizon, alpha);
  report.psi = Matrix(0, 0);
  report.char_poly = position_char_poly(a, horizon, alpha);
  report.routh = routh_first_column(report.char_poly);
  report.max_real_eigenvalue = eigen_max_real(report.phi);
  report.hurwitz = verdict_from_max_real(report.max_real_eigenvalue);
  return report;
}

}  // namespace nrflow
