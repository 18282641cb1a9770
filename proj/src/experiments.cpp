#include <cmath>
#include <limits>

#include "nrflow/errors.hpp"
#include "nrflow/scenarios.hpp"

namespace nrflow {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

ScenarioSpec base_spec(PlantModel plant, ReferenceSignal reference, double horizon,
                       double alpha, double duration) {
  ScenarioSpec spec{std::move(plant),
                    std::move(reference),
                    ControllerConfig{},
                    Vector{},
                    Vector{},
                    duration,
                    false,
                    std::nullopt};
  spec.controller.horizon = horizon;
  spec.controller.alpha = alpha;
  spec.x0 = Vector::Zero(spec.plant.state_dim());
  spec.u0 = Vector::Zero(spec.plant.input_dim());
  return spec;
}

// Peak error over the part of [t0, t1] the run actually reached; NaN when the
// record ends before t0.
double peak_if_reached(const Trajectory& traj, double t0, double t1) {
  const double t_last = traj.times[traj.samples() - 1];
  if (t_last <= t0) return std::nan("");
  return window_peak_error(traj, t0, std::min(t1, t_last));
}

double max_control_rate(const Trajectory& traj) {
  double peak = 0.0;
  for (Index i = 0; i + 1 < traj.samples(); ++i) {
    peak = std::max(peak,
                    (traj.controls.row(i + 1) - traj.controls.row(i)).norm() /
                        traj.dt);
  }
  return peak;
}

ExperimentRun make_run(std::string label, Trajectory traj) {
  ExperimentRun run;
  run.label = std::move(label);
  run.trajectory = std::move(traj);
  return run;
}

ExperimentBundle experiment_fig2() {
  ExperimentBundle bundle{"fig2", {}};
  for (const double horizon : {1.0, 0.5}) {
    auto spec = base_spec(PlantModel::position(-1.0, 2.0),
                          ReferenceSignal::ramp_residual(1), horizon, 1.0, 40.0);
    ExperimentRun run = make_run(horizon == 1.0 ? "T1" : "T05",
                                 simulate_closed_loop(spec));
    const Trajectory& traj = run.trajectory;
    run.metrics["final_abs_error"] =
        (traj.references.row(traj.samples() - 1) - traj.outputs.row(traj.samples() - 1))
            .norm();
    const double early = peak_if_reached(traj, 10.0, 20.0);
    const double late = peak_if_reached(traj, 30.0, 40.0);
    run.metrics["peak_error_10_20"] = early;
    run.metrics["peak_error_30_40"] = late;
    run.metrics["growth_ratio"] = late / early;
    run.notes.push_back(horizon == 1.0 ? "expected: tracking of the ramp"
                                       : "expected: growing oscillations");
    bundle.runs.push_back(std::move(run));
  }
  return bundle;
}

ExperimentBundle experiment_fig3() {
  ExperimentBundle bundle{"fig3", {}};
  struct Case { double horizon, alpha; const char* label; };
  for (const Case c : {Case{3.0, 1.0, "T3"}, Case{0.4, 5.0, "T04_a5"}}) {
    auto spec = base_spec(PlantModel::position(0.5, 0.0),
                          ReferenceSignal::sinusoid(2.0, 1.0, 1.0), c.horizon,
                          c.alpha, 40.0);
    ExperimentRun run = make_run(c.label, simulate_closed_loop(spec));
    run.metrics["mean_error_20_40"] = window_mean_error(run.trajectory, 20.0, 40.0);
    run.metrics["peak_control_rate"] = max_control_rate(run.trajectory);
    run.notes.push_back(c.horizon > 1.0 ? "expected: stable but no tracking"
                                        : "expected: stable and tracking");
    bundle.runs.push_back(std::move(run));
  }
  return bundle;
}

ExperimentBundle experiment_fig4() {
  ExperimentBundle bundle{"fig4", {}};
  const ReferenceSignal target = ReferenceSignal::constant(Vector::Constant(1, kPi / 6.0));
  for (const double horizon : {2.0, 0.8}) {
    auto spec = base_spec(PlantModel::pendulum(1.0, 0.2), target, horizon, 1.0, 40.0);
    ExperimentRun run = make_run(horizon == 2.0 ? "T2" : "T08",
                                 simulate_closed_loop(spec));
    const Trajectory& traj = run.trajectory;
    run.metrics["diverged"] = traj.completed() ? 0.0 : 1.0;
    if (traj.completed()) {
      run.metrics["peak_error_after_30"] =
          window_peak_error(traj, 30.0, traj.times[traj.samples() - 1]);
    }
    run.metrics["peak_error_10_20"] = peak_if_reached(traj, 10.0, 20.0);
    run.metrics["peak_error_20_30"] = peak_if_reached(traj, 20.0, 30.0);
    run.metrics["peak_error_30_40"] = peak_if_reached(traj, 30.0, 40.0);
    run.notes.push_back(horizon == 2.0 ? "expected: angle settles on the target"
                                       : "expected: unstable, no tracking");
    bundle.runs.push_back(std::move(run));
  }
  return bundle;
}

ExperimentBundle experiment_fig5() {
  ExperimentBundle bundle{"fig5", {}};
  const ReferenceSignal target = ReferenceSignal::sinusoid(kPi / 6.0, kPi / 8.0, 1.0);
  struct Case { double horizon, alpha; const char* label; };
  for (const Case c :
       {Case{2.0, 1.0, "T2"}, Case{0.15, 20.0, "T015_a20"}, Case{0.2, 8.0, "T02_a8"}}) {
    auto spec = base_spec(PlantModel::pendulum(1.0, 0.2), target, c.horizon,
                          c.alpha, 35.0);
    ExperimentRun run = make_run(c.label, simulate_closed_loop(spec));
    if (run.trajectory.completed()) {
      run.metrics["error_integral_5_35"] =
          tracking_error_integral(run.trajectory, 5.0, 35.0);
      run.metrics["mean_error_5_35"] = window_mean_error(run.trajectory, 5.0, 35.0);
    }
    run.metrics["diverged"] = run.trajectory.completed() ? 0.0 : 1.0;
    run.notes.push_back(c.horizon == 2.0 ? "expected: stable but biased"
                                         : "expected: tracking");
    bundle.runs.push_back(std::move(run));
  }
  return bundle;
}

ExperimentBundle experiment_prop1() {
  ExperimentBundle bundle{"prop1", {}};
  for (const double alpha : {1.0, 10.0}) {
    auto spec = base_spec(memoryless_cubic(1), ReferenceSignal::sinusoid(0.0, 1.0, 1.0),
                          1.0, alpha, 60.0);
    ExperimentRun run = make_run(alpha == 1.0 ? "a1" : "a10",
                                 simulate_closed_loop(spec));
    run.metrics["tail_sup_error"] = asymptotic_error_sup(run.trajectory, 0.25);
    run.metrics["error_bound"] = spec.reference.sup_rate() / alpha;
    run.notes.push_back("tail error should respect sup||r'|| / alpha");
    bundle.runs.push_back(std::move(run));
  }
  return bundle;
}

ExperimentBundle experiment_platoon() {
  ExperimentBundle bundle{"platoon", {}};
  ScenarioSpec spec{PlantModel::integrator(2),
                    ReferenceSignal::constant(Vector::Zero(2)),
                    ControllerConfig{},
                    Vector::Zero(2),
                    Vector::Zero(2),
                    20.0,
                    false,
                    PlatoonSpec{}};
  spec.controller.horizon = 0.6;
  spec.controller.alpha = 45.0;

  ExperimentRun run;
  run.label = "eight_agents";
  run.platoon = simulate_platoon(spec);
  const PlatoonResult& result = *run.platoon;
  const double target = spec.platoon->spacing;
  double max_dev_15_20 = 0.0;
  double final_min = std::numeric_limits<double>::infinity();
  double final_max = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < result.times.size(); ++i) {
    if (result.times[i] < 15.0 - 1e-9) continue;
    for (Index j = 0; j < result.interspacing.cols(); ++j) {
      const double s = result.interspacing(i, j);
      max_dev_15_20 = std::max(max_dev_15_20, std::abs(s - target));
      final_min = std::min(final_min, s);
      final_max = std::max(final_max, s);
    }
  }
  run.metrics["spacing_target"] = target;
  run.metrics["max_spacing_deviation_15_20"] = max_dev_15_20;
  run.metrics["spacing_min_15_20"] = final_min;
  run.metrics["spacing_max_15_20"] = final_max;
  run.notes.push_back("interspacings should settle near the target chord length");
  bundle.runs.push_back(std::move(run));
  return bundle;
}

}  // namespace

const std::vector<std::string>& named_experiments() {
  static const std::vector<std::string> names = {"fig2", "fig3", "fig4",
                                                 "fig5", "platoon", "prop1"};
  return names;
}

ExperimentBundle run_named_experiment(const std::string& name) {
  if (name == "fig2") return experiment_fig2();
  if (name == "fig3") return experiment_fig3();
  if (name == "fig4") return experiment_fig4();
  if (name == "fig5") return experiment_fig5();
  if (name == "platoon") return experiment_platoon();
  if (name == "prop1") return experiment_prop1();
  std::string valid;
  for (const auto& n : named_experiments()) valid += (valid.empty() ? "" : ", ") + n;
  throw ArgumentError("unknown experiment '" + name + "' (valid: " + valid + ")");
}

}  // namespace nrflow
