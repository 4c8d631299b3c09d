#include "dwbec/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

namespace dwbec {

namespace {

struct State {
  double x;
  double phi;  // unwrapped during integration
};

State rhs(const State& y, double xi, double delta) {
  Flow f = flow_field({y.x, y.phi}, xi, delta);
  return {f.dx_dtau, f.dphi_dtau};
}

bool interior(double x) {
  return x >= kBoundaryMargin && x <= 1.0 - kBoundaryMargin;
}

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                 a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                 e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640,
                 e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace

Trajectory integrate(PhasePoint start, double xi, double delta,
                     double tau_end, double dtau_max,
                     const IntegrateOptions& opt) {
  detail::require_interior(start.x);
  if (!(tau_end > 0.0)) throw domain_error("integrate: tau_end must be > 0");
  if (!(dtau_max > 0.0)) throw domain_error("integrate: dtau_max must be > 0");

  Trajectory traj;
  traj.xi = xi;
  traj.delta = delta;

  const double h0 = reduced_energy(start, xi, delta);
  const double scale = reduced_energy_scale(xi, delta);
  const double drift_cap = opt.energy_drift_tolerance * scale;

  State y{start.x, start.phi};
  double tau = 0.0;
  double dt = std::min(dtau_max, 1e-3);
  const double dt_min = 1e-13 * std::max(1.0, tau_end);

  auto record = [&](double t, const State& s) {
    traj.samples.push_back(
        {t, {s.x, wrap_phase(s.phi)}, reduced_energy({s.x, s.phi}, xi, delta)});
  };
  record(tau, y);

  State k1 = rhs(y, xi, delta);
  while (tau < tau_end) {
    dt = std::min(dt, tau_end - tau);
    bool reject = false;
    State y5{}, k7{};
    double err = 0.0;

    // Stage evaluations; leaving the interior marks the step invalid.
    auto step_try = [&]() -> bool {
      State s2{y.x + dt * a21 * k1.x, y.phi + dt * a21 * k1.phi};
      if (!interior(s2.x)) return false;
      State k2 = rhs(s2, xi, delta);
      State s3{y.x + dt * (a31 * k1.x + a32 * k2.x),
               y.phi + dt * (a31 * k1.phi + a32 * k2.phi)};
      if (!interior(s3.x)) return false;
      State k3 = rhs(s3, xi, delta);
      State s4{y.x + dt * (a41 * k1.x + a42 * k2.x + a43 * k3.x),
               y.phi + dt * (a41 * k1.phi + a42 * k2.phi + a43 * k3.phi)};
      if (!interior(s4.x)) return false;
      State k4 = rhs(s4, xi, delta);
      State s5{y.x + dt * (a51 * k1.x + a52 * k2.x + a53 * k3.x + a54 * k4.x),
               y.phi +
                   dt * (a51 * k1.phi + a52 * k2.phi + a53 * k3.phi +
                         a54 * k4.phi)};
      if (!interior(s5.x)) return false;
      State k5 = rhs(s5, xi, delta);
      State s6{y.x + dt * (a61 * k1.x + a62 * k2.x + a63 * k3.x + a64 * k4.x +
                           a65 * k5.x),
               y.phi + dt * (a61 * k1.phi + a62 * k2.phi + a63 * k3.phi +
                             a64 * k4.phi + a65 * k5.phi)};
      if (!interior(s6.x)) return false;
      State k6 = rhs(s6, xi, delta);
      y5 = {y.x + dt * (b1 * k1.x + b3 * k3.x + b4 * k4.x + b5 * k5.x +
                        b6 * k6.x),
            y.phi + dt * (b1 * k1.phi + b3 * k3.phi + b4 * k4.phi +
                          b5 * k5.phi + b6 * k6.phi)};
      if (!interior(y5.x)) return false;
      k7 = rhs(y5, xi, delta);
      const double ex = dt * (e1 * k1.x + e3 * k3.x + e4 * k4.x + e5 * k5.x +
                              e6 * k6.x + e7 * k7.x);
      const double ep = dt * (e1 * k1.phi + e3 * k3.phi + e4 * k4.phi +
                              e5 * k5.phi + e6 * k6.phi + e7 * k7.phi);
      const double sx = opt.atol + opt.rtol * std::max(std::abs(y.x),
                                                       std::abs(y5.x));
      const double sp = opt.atol + opt.rtol * std::max(std::abs(y.phi),
                                                       std::abs(y5.phi));
      err = std::sqrt(0.5 * ((ex / sx) * (ex / sx) + (ep / sp) * (ep / sp)));
      return true;
    };

    if (!step_try()) {
      reject = true;
    } else if (err > 1.0) {
      reject = true;
    } else {
      const double h_new = reduced_energy({y5.x, y5.phi}, xi, delta);
      if (std::abs(h_new - h0) > drift_cap) reject = true;
    }

    if (reject) {
      ++traj.stats.rejected;
      dt *= (err > 1.0 && std::isfinite(err))
                ? std::max(0.2, 0.9 * std::pow(err, -0.2))
                : 0.5;
      if (dt < dt_min) {
        // Persistent failure right at the edge is a boundary event, not
        // stiffness.
        if (y.x < 64.0 * kBoundaryMargin || y.x > 1.0 - 64.0 * kBoundaryMargin) {
          traj.stats.boundary_event = true;
          return traj;
        }
        throw numerical_error("integrate: step size underflow (stiffness)");
      }
      continue;
    }

    tau += dt;
    y = y5;
    k1 = k7;  // FSAL
    ++traj.stats.accepted;
    record(tau, y);
    const double drift =
        std::abs(traj.samples.back().h - h0) / scale;
    traj.stats.max_drift = std::max(traj.stats.max_drift, drift);

    const double grow =
        (err > 0.0) ? std::min(5.0, 0.9 * std::pow(err, -0.2)) : 5.0;
    dt = std::min(dt * grow, dtau_max);
  }
  return traj;
}

PeriodEstimate measure_period(const Trajectory& traj) {
  const auto& s = traj.samples;
  if (s.size() < 4) throw numerical_error("measure_period: too few samples");
  double mean = 0.0;
  for (const auto& smp : s) mean += smp.point.x;
  mean /= static_cast<double>(s.size());

  double lo = s[0].point.x, hi = s[0].point.x;
  for (const auto& smp : s) {
    lo = std::min(lo, smp.point.x);
    hi = std::max(hi, smp.point.x);
  }
  if (hi - lo < 1e-10)
    throw numerical_error("measure_period: trajectory is not oscillatory");

  std::vector<double> crossings;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double a = s[i].point.x - mean;
    const double b = s[i + 1].point.x - mean;
    if (a <= 0.0 && b > 0.0) {
      const double frac = -a / (b - a);
      crossings.push_back(s[i].tau + frac * (s[i + 1].tau - s[i].tau));
    }
  }
  if (crossings.size() < 3)
    throw numerical_error(
        "measure_period: fewer than two full oscillations observed");

  std::vector<double> periods(crossings.size() - 1);
  for (std::size_t i = 0; i + 1 < crossings.size(); ++i)
    periods[i] = crossings[i + 1] - crossings[i];
  const double n = static_cast<double>(periods.size());
  const double avg = std::accumulate(periods.begin(), periods.end(), 0.0) / n;
  double var = 0.0;
  for (double p : periods) var += (p - avg) * (p - avg);
  var /= (n > 1.0) ? (n - 1.0) : 1.0;

  PeriodEstimate est;
  est.period = avg;
  est.rel_std_error = std::sqrt(var / n) / avg;
  est.cycles = static_cast<int>(periods.size());
  return est;
}

TrappingReport detect_trapping(const Trajectory& traj) {
  if (traj.samples.empty())
    throw domain_error("detect_trapping: empty trajectory");
  TrappingReport r;
  r.min_x = r.max_x = traj.samples[0].point.x;
  for (const auto& s : traj.samples) {
    r.min_x = std::min(r.min_x, s.point.x);
    r.max_x = std::max(r.max_x, s.point.x);
  }
  if (r.min_x > 0.5) {
    r.trapped = true;
    r.side = TrappingReport::Side::left;
  } else if (r.max_x < 0.5) {
    r.trapped = true;
    r.side = TrappingReport::Side::right;
  }
  return r;
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
  os << "tau,x,phi,h\n";
  char buf[128];
  for (const auto& s : traj.samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", s.tau,
                  s.point.x, s.point.phi, s.h);
    os << buf;
  }
}

}  // namespace dwbec
