#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nrflow/controller.hpp"
#include "nrflow/dynamics.hpp"
#include "nrflow/reference.hpp"
#include "nrflow/types.hpp"

namespace nrflow {

enum class RunOutcome { Completed, Diverged, SingularJacobian };

std::string_view to_string(RunOutcome outcome);

/// Uniformly sampled record of a closed-loop run. Unstable runs are data:
/// a tripped overflow guard or a singular Jacobian truncates the record and
/// sets the outcome marker instead of failing.
struct Trajectory {
  Vector times;       // uniform grid, step dt
  Matrix states;      // one row per sample, n columns
  Matrix controls;    // k columns
  Matrix outputs;     // k columns
  Matrix references;  // r(t) at each sample, k columns
  double dt = 0.0;
  RunOutcome outcome = RunOutcome::Completed;
  std::string diagnostic;

  Index samples() const { return times.size(); }
  bool completed() const { return outcome == RunOutcome::Completed; }
};

/// Platoon of single integrators on a circle: leader tracks a moving circle
/// point with full preview; each follower regulates toward the point at chord
/// distance `spacing` behind its predecessor, held over the lookahead.
struct PlatoonSpec {
  int agent_count = 8;
  Eigen::Vector2d center{0.0, 0.0};
  double radius = 28.0;
  double spacing = 14.0;
  /// Leader path speed (length units per second). Followers hold their
  /// target over the lookahead window, so each one trails its target point
  /// by horizon * speed of arc; the default keeps that lag small against
  /// the +-0.5 spacing band.
  double leader_speed = 0.44;
  double leader_angle0 = 0.0;
  double radial_jitter = 0.5;
  unsigned long seed = 0;

  void validate() const;
};

struct ScenarioSpec {
  PlantModel plant;
  ReferenceSignal reference;
  ControllerConfig controller;
  Vector x0;
  Vector u0;
  double duration = 20.0;
  bool expect_stable = false;
  std::optional<PlatoonSpec> platoon;

  void validate() const;
};

struct PlatoonResult {
  std::vector<Trajectory> agents;
  Vector times;
  Matrix interspacing;  // columns s_12, s_23, ..., one row per sample
  RunOutcome outcome = RunOutcome::Completed;
  std::string diagnostic;
};

/// Iterates closed_loop_step for duration/dt steps, recording every sample.
Trajectory simulate_closed_loop(const ScenarioSpec& spec);

/// Left-Riemann integral of ||r(t) - y(t)|| over [t0, t1].
double tracking_error_integral(const Trajectory& traj, double t0, double t1);

/// Max of ||r(t) - y(t)|| over the final tail_fraction of the run; a
/// finite-horizon stand-in for the asymptotic error bound.
double asymptotic_error_sup(const Trajectory& traj, double tail_fraction);

/// Max of ||r(t) - y(t)|| over samples in [t0, t1].
double window_peak_error(const Trajectory& traj, double t0, double t1);

/// Mean of ||r(t) - y(t)|| over samples in [t0, t1].
double window_mean_error(const Trajectory& traj, double t0, double t1);

/// Target point for a follower: project the predecessor onto the circle and
/// step back (clockwise) by the chord angle 2 asin(spacing / (2 radius)).
Eigen::Vector2d follower_reference(const Eigen::Vector2d& pred_position,
                                   const Eigen::Vector2d& center, double radius,
                                   double spacing);

PlatoonResult simulate_platoon(const ScenarioSpec& spec);

struct ExperimentRun {
  std::string label;
  Trajectory trajectory;                  // empty for platoon runs
  std::optional<PlatoonResult> platoon;
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;
};

struct ExperimentBundle {
  std::string name;
  std::vector<ExperimentRun> runs;
};

const std::vector<std::string>& named_experiments();

/// Preconfigured scenario sets: fig2, fig3, fig4, fig5, platoon, prop1.
ExperimentBundle run_named_experiment(const std::string& name);

}  // namespace nrflow
