#pragma once

#include "dwbec/errors.hpp"

namespace dwbec {

// Operations reject x closer than this to the edges, where the phase
// velocity has a 1/sqrt(x(1-x)) singularity.
inline constexpr double kBoundaryMargin = 1e-9;

/// Physical couplings of the two-mode double-well model, hbar = 1.
/// `mean_field` is the product g*beta; the two factors are never needed
/// separately.
struct ModelParams {
  int n_total = 1;          // N
  double tunneling = 0.5;   // gamma
  double mean_field = 0.0;  // g*beta
  double tilt = 0.0;        // Delta = (E_L - E_R)

  void validate() const;
};

struct Reduced {
  double xi = 0.0;     // g*beta*N / (2*gamma)
  double delta = 0.0;  // Delta / (2*gamma)
};

Reduced reduced_params(const ModelParams& p);

/// Inverse convenience map: gamma = 1/2 so that 2*gamma = 1 and reduced
/// time coincides with physical time.
ModelParams params_from_reduced(double xi, double delta, int n_total);

/// Semiclassical state on the cylinder: x = n/N, phi the phase difference.
struct PhasePoint {
  double x = 0.5;
  double phi = 0.0;
};

/// Canonical phase representative in (-pi, pi].
double wrap_phase(double phi);

/// h(x, phi) = delta*x - xi*x*(1-x) + sqrt(x*(1-x))*cos(phi).
/// Multiplying by 2*gamma*N recovers the dimensional energy above its
/// conserved offset. Valid on the closed interval x in [0, 1].
double reduced_energy(PhasePoint pt, double xi, double delta);

/// Upper bound |h| <= |delta| + |xi|/4 + 1/2; used as the drift scale.
double reduced_energy_scale(double xi, double delta);

struct Flow {
  double dx_dtau = 0.0;
  double dphi_dtau = 0.0;
};

/// Josephson flow in reduced time tau = 2*gamma*t:
///   dx/dtau   = sqrt(x(1-x)) sin(phi)
///   dphi/dtau = delta - xi(1-2x) + (1-2x) cos(phi) / (2 sqrt(x(1-x)))
/// Equivalently dx/dtau = -dh/dphi, dphi/dtau = +dh/dx.
Flow flow_field(PhasePoint pt, double xi, double delta);

struct Hessian {
  double h_xx = 0.0;
  double h_xphi = 0.0;
  double h_phiphi = 0.0;
};

/// Exact second partial derivatives of h; interior points only.
Hessian energy_hessian(PhasePoint pt, double xi, double delta);

namespace detail {
void require_interior(double x);
}

}  // namespace dwbec
