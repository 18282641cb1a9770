#include "nrflow/scenarios.hpp"

#include <cmath>
#include <random>

#include "nrflow/errors.hpp"

namespace nrflow {

namespace {

Index window_start(const Trajectory& traj, double t0) {
  return static_cast<Index>(
      std::ceil((t0 - traj.times[0]) / traj.dt - 1e-9));
}

void check_window(const Trajectory& traj, double t0, double t1) {
  if (traj.samples() < 2) throw ArgumentError("trajectory window: too few samples");
  if (!(t0 < t1)) throw ArgumentError("trajectory window: t0 must be < t1");
  const double t_first = traj.times[0];
  const double t_last = traj.times[traj.samples() - 1];
  if (t0 < t_first - 1e-9 || t1 > t_last + traj.dt * 1e-6 + 1e-9) {
    throw ArgumentError("trajectory window: [t0, t1] outside the recorded span");
  }
}

double sample_error(const Trajectory& traj, Index i) {
  return (traj.references.row(i) - traj.outputs.row(i)).norm();
}

struct Recorder {
  explicit Recorder(Index samples, Index n, Index k) {
    traj.times.resize(samples);
    traj.states.resize(samples, n);
    traj.controls.resize(samples, k);
    traj.outputs.resize(samples, k);
    traj.references.resize(samples, k);
  }

  void record(double t, const Vector& x, const Vector& u, const Vector& y,
              const Vector& r) {
    traj.times[count] = t;
    traj.states.row(count) = x;
    traj.controls.row(count) = u;
    traj.outputs.row(count) = y;
    traj.references.row(count) = r;
    ++count;
  }

  Trajectory finish() {
    traj.times.conservativeResize(count);
    traj.states.conservativeResize(count, Eigen::NoChange);
    traj.controls.conservativeResize(count, Eigen::NoChange);
    traj.outputs.conservativeResize(count, Eigen::NoChange);
    traj.references.conservativeResize(count, Eigen::NoChange);
    return std::move(traj);
  }

  Trajectory traj;
  Index count = 0;
};

bool within_guard(const Vector& v) {
  return v.allFinite() && v.norm() <= kDivergenceGuard;
}

}  // namespace

std::string_view to_string(RunOutcome outcome) {
  switch (outcome) {
    case RunOutcome::Completed: return "completed";
    case RunOutcome::Diverged: return "diverged";
    case RunOutcome::SingularJacobian: return "singular-jacobian";
  }
  return "unknown";
}

void PlatoonSpec::validate() const {
  if (agent_count < 2) throw ArgumentError("platoon: agent_count must be >= 2");
  if (!(radius > 0.0)) throw ArgumentError("platoon: radius must be > 0");
  if (!(spacing > 0.0 && spacing < 2.0 * radius)) {
    throw ArgumentError("platoon: spacing must satisfy 0 < spacing < 2 radius");
  }
  if (leader_speed < 0.0) throw ArgumentError("platoon: leader_speed must be >= 0");
  if (radial_jitter < 0.0) throw ArgumentError("platoon: radial_jitter must be >= 0");
}

void ScenarioSpec::validate() const {
  controller.validate();
  if (!(duration > 0.0)) throw ArgumentError("scenario: duration must be > 0");
  if (platoon) {
    platoon->validate();
    return;
  }
  if (x0.size() != plant.state_dim()) {
    throw ArgumentError("scenario: initial_state size does not match plant");
  }
  if (u0.size() != plant.input_dim()) {
    throw ArgumentError("scenario: initial_control size does not match plant");
  }
  if (reference.dim() != plant.input_dim()) {
    throw ArgumentError("scenario: reference dimension does not match plant output");
  }
}

Trajectory simulate_closed_loop(const ScenarioSpec& spec) {
  spec.validate();
  const PlantModel& plant = spec.plant;
  const ControllerConfig& cfg = spec.controller;
  const long steps = std::max(1L, std::lround(spec.duration / cfg.dt));

  auto output_of = [&](const Vector& x, const Vector& u) -> Vector {
    return plant.is_memoryless() ? eval_memoryless(plant, u).first
                                 : eval_output(plant, x);
  };

  Recorder rec(steps + 1, plant.state_dim(), plant.input_dim());
  rec.traj.dt = cfg.dt;
  Vector x = spec.x0;
  Vector u = spec.u0;
  rec.record(0.0, x, u, output_of(x, u), spec.reference.eval(0.0));

  for (long n = 0; n < steps; ++n) {
    const double t = n * cfg.dt;
    try {
      const ClosedLoopStep step =
          closed_loop_step(plant, ControlState{u, t}, x, spec.reference, cfg);
      x = step.x_next;
      u = step.u_next;
    } catch (const SingularJacobianError& e) {
      rec.traj.outcome = RunOutcome::SingularJacobian;
      rec.traj.diagnostic = e.what();
      break;
    } catch (const DivergenceError& e) {
      rec.traj.outcome = RunOutcome::Diverged;
      rec.traj.diagnostic = std::string(e.what()) + " at t = " + std::to_string(t);
      break;
    }
    const double t_next = (n + 1) * cfg.dt;
    const Vector y = output_of(x, u);
    if (!within_guard(x) || !within_guard(u) || !within_guard(y)) {
      rec.traj.outcome = RunOutcome::Diverged;
      rec.traj.diagnostic =
          "state norm crossed the overflow guard at t = " + std::to_string(t_next);
      break;
    }
    rec.record(t_next, x, u, y, spec.reference.eval(t_next));
  }
  return rec.finish();
}

double tracking_error_integral(const Trajectory& traj, double t0, double t1) {
  check_window(traj, t0, t1);
  const Index i0 = window_start(traj, t0);
  const Index i1 = window_start(traj, t1);  // exclusive: left-Riemann sum
  double sum = 0.0;
  for (Index i = i0; i < i1 && i < traj.samples(); ++i) {
    sum += sample_error(traj, i);
  }
  return sum * traj.dt;
}

double asymptotic_error_sup(const Trajectory& traj, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) {
    throw ArgumentError("asymptotic_error_sup: tail_fraction must be in (0, 1)");
  }
  const Index n = traj.samples();
  if (n < 1) throw ArgumentError("asymptotic_error_sup: empty trajectory");
  const Index start =
      n - std::max<Index>(1, static_cast<Index>(std::floor(n * tail_fraction)));
  double sup = 0.0;
  for (Index i = start; i < n; ++i) sup = std::max(sup, sample_error(traj, i));
  return sup;
}

double window_peak_error(const Trajectory& traj, double t0, double t1) {
  check_window(traj, t0, t1);
  double peak = 0.0;
  for (Index i = 0; i < traj.samples(); ++i) {
    const double t = traj.times[i];
    if (t >= t0 - 1e-9 && t <= t1 + 1e-9) peak = std::max(peak, sample_error(traj, i));
  }
  return peak;
}

double window_mean_error(const Trajectory& traj, double t0, double t1) {
  check_window(traj, t0, t1);
  double sum = 0.0;
  long count = 0;
  for (Index i = 0; i < traj.samples(); ++i) {
    const double t = traj.times[i];
    if (t >= t0 - 1e-9 && t <= t1 + 1e-9) {
      sum += sample_error(traj, i);
      ++count;
    }
  }
  if (count == 0) throw ArgumentError("window_mean_error: no samples in window");
  return sum / count;
}

Eigen::Vector2d follower_reference(const Eigen::Vector2d& pred_position,
                                   const Eigen::Vector2d& center, double radius,
                                   double spacing) {
  if (!(radius > 0.0)) throw ArgumentError("follower_reference: radius must be > 0");
  if (!(spacing > 0.0 && spacing < 2.0 * radius)) {
    throw ArgumentError("follower_reference: spacing must satisfy 0 < spacing < 2 radius");
  }
  const Eigen::Vector2d rel = pred_position - center;
  if (rel.norm() < 1e-12 * std::max(1.0, radius)) {
    throw ArgumentError("follower_reference: degenerate geometry, predecessor at center");
  }
  const double theta_pred = std::atan2(rel.y(), rel.x());
  // Motion is counter-clockwise, so "behind" is a clockwise offset by the
  // chord angle.
  const double theta_target = theta_pred - 2.0 * std::asin(spacing / (2.0 * radius));
  return center + radius * Eigen::Vector2d(std::cos(theta_target),
                                           std::sin(theta_target));
}

PlatoonResult simulate_platoon(const ScenarioSpec& spec) {
  spec.validate();
  if (!spec.platoon) throw ArgumentError("simulate_platoon: spec has no platoon section");
  const PlatoonSpec& ps = *spec.platoon;
  const ControllerConfig& cfg = spec.controller;
  const int agents = ps.agent_count;
  const long steps = std::max(1L, std::lround(spec.duration / cfg.dt));
  const double omega = ps.leader_speed / ps.radius;
  const PlantModel plant = PlantModel::integrator(2);
  const ReferenceSignal leader_ref =
      ReferenceSignal::circle_point(ps.center, ps.radius, ps.leader_angle0, omega);

  // Leader starts exactly on the circle; followers sit at uniform angular
  // gaps behind it with a small seeded radial perturbation to exercise the
  // transient.
  std::mt19937_64 rng(ps.seed);
  std::uniform_real_distribution<double> jitter(-ps.radial_jitter, ps.radial_jitter);
  std::vector<Eigen::Vector2d> pos(agents);
  std::vector<Eigen::Vector2d> ctl(agents, Eigen::Vector2d::Zero());
  const double gap = 2.0 * M_PI / agents;
  for (int i = 0; i < agents; ++i) {
    const double theta = ps.leader_angle0 - i * gap;
    const double rho = ps.radius + (i == 0 ? 0.0 : jitter(rng));
    pos[i] = ps.center + rho * Eigen::Vector2d(std::cos(theta), std::sin(theta));
  }

  PlatoonResult result;
  result.agents.resize(agents);
  std::vector<Recorder> recs;
  recs.reserve(agents);
  for (int i = 0; i < agents; ++i) recs.emplace_back(steps + 1, 2, 2);
  result.times.resize(steps + 1);
  result.interspacing.resize(steps + 1, agents - 1);

  auto record_all = [&](Index row, double t) {
    result.times[row] = t;
    for (int i = 0; i < agents; ++i) {
      const Vector x = pos[i];
      const Vector u = ctl[i];
      const Vector r = i == 0 ? Vector(leader_ref.eval(t))
                              : Vector(follower_reference(pos[i - 1], ps.center,
                                                          ps.radius, ps.spacing));
      recs[i].record(t, x, u, x, r);
    }
    for (int i = 1; i < agents; ++i) {
      result.interspacing(row, i - 1) = (pos[i] - pos[i - 1]).norm();
    }
  };

  record_all(0, 0.0);
  Index recorded = 1;
  for (long n = 0; n < steps; ++n) {
    const double t = n * cfg.dt;
    std::vector<Eigen::Vector2d> next_pos(agents), next_ctl(agents);
    try {
      // All agents step from the shared previous-step snapshot and commit
      // together, so the result is independent of evaluation order.
      for (int i = 0; i < agents; ++i) {
        const ReferenceSignal ref =
            i == 0 ? leader_ref
                   : ReferenceSignal::constant(Vector(follower_reference(
                         pos[i - 1], ps.center, ps.radius, ps.spacing)));
        const ClosedLoopStep step = closed_loop_step(
            plant, ControlState{Vector(ctl[i]), t}, Vector(pos[i]), ref, cfg);
        next_pos[i] = step.x_next;
        next_ctl[i] = step.u_next;
      }
    } catch (const SingularJacobianError& e) {
      result.outcome = RunOutcome::SingularJacobian;
      result.diagnostic = e.what();
      break;
    } catch (const DivergenceError& e) {
      result.outcome = RunOutcome::Diverged;
      result.diagnostic = std::string(e.what()) + " at t = " + std::to_string(t);
      break;
    }
    pos = std::move(next_pos);
    ctl = std::move(next_ctl);
    bool in_guard = true;
    for (int i = 0; i < agents; ++i) {
      in_guard = in_guard && within_guard(Vector(pos[i])) && within_guard(Vector(ctl[i]));
    }
    if (!in_guard) {
      result.outcome = RunOutcome::Diverged;
      result.diagnostic =
          "agent state crossed the overflow guard at t = " + std::to_string((n + 1) * cfg.dt);
      break;
    }
    record_all(recorded, (n + 1) * cfg.dt);
    ++recorded;
  }

  result.times.conservativeResize(recorded);
  result.interspacing.conservativeResize(recorded, Eigen::NoChange);
  for (int i = 0; i < agents; ++i) {
    recs[i].traj.dt = cfg.dt;
    recs[i].traj.outcome = result.outcome;
    recs[i].traj.diagnostic = result.diagnostic;
    result.agents[i] = recs[i].finish();
  }
  return result;
}

}  // namespace nrflow
