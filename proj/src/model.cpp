#include "dwbec/model.hpp"

#include <cmath>
#include <numbers>

namespace dwbec {

namespace {
constexpr double kPi = std::numbers::pi;
}

void ModelParams::validate() const {
  if (n_total < 1) throw domain_error("ModelParams: n_total must be >= 1");
  if (tunneling == 0.0)
    throw domain_error("ModelParams: tunneling must be nonzero");
  const double xi = mean_field * n_total / (2.0 * tunneling);
  const double delta = tilt / (2.0 * tunneling);
  if (!std::isfinite(xi) || !std::isfinite(delta))
    throw domain_error("ModelParams: reduced parameters are not finite");
}

Reduced reduced_params(const ModelParams& p) {
  p.validate();
  return {p.mean_field * p.n_total / (2.0 * p.tunneling),
          p.tilt / (2.0 * p.tunneling)};
}

ModelParams params_from_reduced(double xi, double delta, int n_total) {
  if (n_total < 1) throw domain_error("n_total must be >= 1");
  ModelParams p;
  p.n_total = n_total;
  p.tunneling = 0.5;
  p.mean_field = xi / n_total;
  p.tilt = delta;
  p.validate();
  return p;
}

double wrap_phase(double phi) {
  double r = std::remainder(phi, 2.0 * kPi);
  if (r <= -kPi) r = kPi;  // representative in (-pi, pi]
  return r;
}

void detail::require_interior(double x) {
  if (!(x >= kBoundaryMargin && x <= 1.0 - kBoundaryMargin))
    throw domain_error("phase point within boundary margin of x = 0 or 1");
}

double reduced_energy(PhasePoint pt, double xi, double delta) {
  if (!(pt.x >= 0.0 && pt.x <= 1.0))
    throw domain_error("reduced_energy: x outside [0, 1]");
  const double u = pt.x * (1.0 - pt.x);
  return delta * pt.x - xi * u + std::sqrt(u) * std::cos(pt.phi);
}

double reduced_energy_scale(double xi, double delta) {
  return std::abs(delta) + std::abs(xi) / 4.0 + 0.5;
}

Flow flow_field(PhasePoint pt, double xi, double delta) {
  detail::require_interior(pt.x);
  const double u = pt.x * (1.0 - pt.x);
  const double s = std::sqrt(u);
  const double w = 1.0 - 2.0 * pt.x;
  Flow f;
  f.dx_dtau = s * std::sin(pt.phi);
  f.dphi_dtau = delta - xi * w + w * std::cos(pt.phi) / (2.0 * s);
  return f;
}

Hessian energy_hessian(PhasePoint pt, double xi, double delta) {
  (void)delta;  // the tilt is linear in x
  detail::require_interior(pt.x);
  const double u = pt.x * (1.0 - pt.x);
  const double s = std::sqrt(u);
  const double w = 1.0 - 2.0 * pt.x;
  const double c = std::cos(pt.phi);
  Hessian h;
  h.h_xx = 2.0 * xi - c / (4.0 * u * s);
  h.h_xphi = -w * std::sin(pt.phi) / (2.0 * s);
  h.h_phiphi = -s * c;
  return h;
}

}  // namespace dwbec
