#pragma once

#include <iosfwd>
#include <vector>

#include "dwbec/model.hpp"

namespace dwbec {

struct TrajectorySample {
  double tau = 0.0;
  PhasePoint point;  // phi stored as canonical representative
  double h = 0.0;
};

struct StepStats {
  long accepted = 0;
  long rejected = 0;
  double max_drift = 0.0;  // max |h - h(0)| relative to the energy scale
  bool boundary_event = false;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double xi = 0.0;
  double delta = 0.0;
  StepStats stats;
};

struct IntegrateOptions {
  double rtol = 1e-12;
  double atol = 1e-14;
  double energy_drift_tolerance = 1e-8;  // relative to reduced_energy_scale
};

/// Adaptive Dormand-Prince 5(4) integration of the reduced Josephson flow.
/// Steps whose energy drift would exceed the tolerance are rejected and
/// retried at smaller size. Reaching the x boundary terminates gracefully
/// with the partial trajectory and stats.boundary_event set.
Trajectory integrate(PhasePoint start, double xi, double delta,
                     double tau_end, double dtau_max,
                     const IntegrateOptions& opt = {});

struct PeriodEstimate {
  double period = 0.0;
  double rel_std_error = 0.0;
  int cycles = 0;
};

/// Oscillation period of x from successive upward crossings of its mean,
/// linearly interpolated between samples.
PeriodEstimate measure_period(const Trajectory& traj);

struct TrappingReport {
  enum class Side { left, right, none };
  bool trapped = false;
  Side side = Side::none;
  double min_x = 0.0;
  double max_x = 0.0;
};

TrappingReport detect_trapping(const Trajectory& traj);

/// CSV with header `tau,x,phi,h`, 17 significant digits per value.
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

}  // namespace dwbec
