#include "dwbec/quantum.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dwbec {

namespace {

constexpr double kPi = std::numbers::pi;

struct Moments {
  double mean = 0.0;
  double stddev = 0.0;
};

Moments number_moments(std::span<const double> state) {
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t n = 0; n < state.size(); ++n) {
    const double p = state[n] * state[n];
    m1 += p * static_cast<double>(n);
    m2 += p * static_cast<double>(n) * static_cast<double>(n);
  }
  const double var = std::max(0.0, m2 - m1 * m1);
  return {m1, std::sqrt(var)};
}

// Deterministic overall sign: first entry of non-negligible magnitude
// is made positive.
void fix_sign(std::vector<double>& v) {
  for (double a : v) {
    if (std::abs(a) > 1e-12) {
      if (a < 0.0)
        for (double& b : v) b = -b;
      return;
    }
  }
}

int phase_grid_size(std::size_t dim, int min_grid) {
  int m = min_grid;
  // Exact normalization needs more grid points than the highest harmonic.
  while (m < static_cast<int>(dim) + 2) m *= 2;
  return m;
}

void phase_row(std::span<const double> state, double phi, double& out) {
  double re = 0.0, im = 0.0;
  // e^{-i n phi} accumulated by rotation recurrence.
  const double cr = std::cos(phi), ci = -std::sin(phi);
  double wr = 1.0, wi = 0.0;
  for (double c : state) {
    re += c * wr;
    im += c * wi;
    const double nr = wr * cr - wi * ci;
    wi = wr * ci + wi * cr;
    wr = nr;
  }
  out = (re * re + im * im) / (2.0 * kPi);
}

}  // namespace

FockHamiltonian build(const ModelParams& p, int cap) {
  p.validate();
  if (p.n_total > cap)
    throw domain_error("build: n_total exceeds the solver capacity cap");
  const int n_tot = p.n_total;
  FockHamiltonian h;
  h.n_total = n_tot;
  h.diag.resize(n_tot + 1);
  h.offdiag.resize(n_tot);
  for (int n = 0; n <= n_tot; ++n) {
    const double nl = n, nr = n_tot - n;
    h.diag[n] = p.tilt * (nl - nr) / 2.0 +
                p.mean_field / 2.0 * (nl * nl + nr * nr);
  }
  for (int n = 0; n < n_tot; ++n)
    h.offdiag[n] = p.tunneling * std::sqrt((n + 1.0) * (n_tot - n));
  return h;
}

std::vector<EigenPair> low_spectrum(const FockHamiltonian& h, int k) {
  const int dim = h.n_total + 1;
  if (k < 1 || k > dim)
    throw domain_error("low_spectrum: k must be in [1, N+1]");

  std::vector<double> d = h.diag;
  std::vector<double> e = h.offdiag;
  e.resize(dim, 0.0);  // stevr wants length >= n-1 workspace room
  std::vector<double> w(dim);
  std::vector<double> z(static_cast<std::size_t>(dim) * k);
  std::vector<lapack_int> isuppz(2 * std::max(1, k));
  lapack_int found = 0;

  const lapack_int info = LAPACKE_dstevr(
      LAPACK_COL_MAJOR, 'V', 'I', dim, d.data(), e.data(), 0.0, 0.0, 1, k,
      0.0, &found, w.data(), z.data(), dim, isuppz.data());
  if (info != 0 || found < k)
    throw numerical_error("low_spectrum: eigensolver failed, info = " +
                          std::to_string(info));

  std::vector<EigenPair> out(k);
  for (int j = 0; j < k; ++j) {
    out[j].energy = w[j];
    out[j].state.assign(z.begin() + static_cast<std::size_t>(j) * dim,
                        z.begin() + static_cast<std::size_t>(j + 1) * dim);
    fix_sign(out[j].state);
  }
  return out;
}

PhaseDistribution phase_distribution_serial(std::span<const double> state,
                                            int min_grid) {
  const int m = phase_grid_size(state.size(), min_grid);
  PhaseDistribution dist;
  dist.phi.resize(m);
  dist.p.resize(m);
  for (int j = 0; j < m; ++j) {
    dist.phi[j] = -kPi + 2.0 * kPi * (j + 1) / m;
    phase_row(state, dist.phi[j], dist.p[j]);
  }
  return dist;
}

PhaseDistribution phase_distribution(std::span<const double> state,
                                     int min_grid) {
  const int m = phase_grid_size(state.size(), min_grid);
  PhaseDistribution dist;
  dist.phi.resize(m);
  dist.p.resize(m);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < m; ++j) {
    dist.phi[j] = -kPi + 2.0 * kPi * (j + 1) / m;
    phase_row(state, dist.phi[j], dist.p[j]);
  }
  return dist;
}

double circular_stddev(const PhaseDistribution& dist) {
  const double dphi = 2.0 * kPi / dist.phi.size();
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < dist.phi.size(); ++j) {
    re += dist.p[j] * std::cos(dist.phi[j]) * dphi;
    im += dist.p[j] * std::sin(dist.phi[j]) * dphi;
  }
  const double r = std::sqrt(re * re + im * im);
  if (r <= 0.0) return kPi;  // fully spread
  return std::sqrt(std::max(0.0, -2.0 * std::log(std::min(1.0, r))));
}

QuantumGroundReport ground_state(const FockHamiltonian& h) {
  auto pairs = low_spectrum(h, 1);
  QuantumGroundReport rep;
  rep.energy = pairs[0].energy;
  rep.state = std::move(pairs[0].state);
  const Moments m = number_moments(rep.state);
  rep.mean_n = m.mean;
  rep.delta_n = m.stddev;
  rep.phase_distribution = phase_distribution(rep.state);
  rep.delta_phi_circular = circular_stddev(rep.phase_distribution);
  return rep;
}

DoubletReport localized_doublet(const FockHamiltonian& h,
                                const ModelParams& p) {
  const auto [xi, delta] = reduced_params(p);
  if (std::abs(delta) > 1e-12)
    throw domain_error("localized_doublet: requires delta = 0");
  if (!(p.mean_field < 0.0) || std::abs(xi) <= 1.0)
    throw domain_error(
        "localized_doublet: requires attractive coupling with |xi| > 1");

  auto pairs = low_spectrum(h, 2);
  const int dim = h.n_total + 1;

  // Number operator restricted to span{g, e}.
  double m00 = 0.0, m01 = 0.0, m11 = 0.0;
  for (int n = 0; n < dim; ++n) {
    m00 += pairs[0].state[n] * n * pairs[0].state[n];
    m01 += pairs[0].state[n] * n * pairs[1].state[n];
    m11 += pairs[1].state[n] * n * pairs[1].state[n];
  }
  // Eigenvectors of the 2x2 [[m00, m01], [m01, m11]].
  const double theta = 0.5 * std::atan2(2.0 * m01, m00 - m11);
  const double ct = std::cos(theta), st = std::sin(theta);

  auto mix = [&](double a, double b) {
    std::vector<double> v(dim);
    for (int n = 0; n < dim; ++n)
      v[n] = a * pairs[0].state[n] + b * pairs[1].state[n];
    return v;
  };
  const auto va = mix(ct, st);
  const auto vb = mix(-st, ct);
  const Moments ma = number_moments(va);
  const Moments mb = number_moments(vb);

  DoubletReport rep;
  rep.gap = pairs[1].energy - pairs[0].energy;
  const bool a_is_low = ma.mean < mb.mean;
  rep.mean_n_minus = a_is_low ? ma.mean : mb.mean;
  rep.mean_n_plus = a_is_low ? mb.mean : ma.mean;
  rep.delta_n_minus = a_is_low ? ma.stddev : mb.stddev;
  rep.delta_n_plus = a_is_low ? mb.stddev : ma.stddev;
  rep.localized_delta_n = 0.5 * (rep.delta_n_minus + rep.delta_n_plus);
  return rep;
}

}  // namespace dwbec
