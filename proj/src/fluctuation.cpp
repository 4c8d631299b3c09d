#include "dwbec/fluctuation.hpp"

#include <cmath>
#include <vector>

namespace dwbec {

namespace {

double cos_phi0(const FixedPoint& fp) {
  return fp.phi0 == PhiZero::zero ? 1.0 : -1.0;
}

void require_untilted(double delta, Variant v) {
  if (std::abs(delta) > 1e-12)
    throw domain_error("coefficients: variant " + to_string(v) +
                       " requires delta = 0");
}

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::paper_S: return "paper-s";
    case Variant::paper_Spm: return "paper-spm";
    case Variant::javanainen_S: return "javanainen";
    default: return "generic";
  }
}

Variant variant_from_string(const std::string& s) {
  if (s == "paper-s") return Variant::paper_S;
  if (s == "paper-spm") return Variant::paper_Spm;
  if (s == "javanainen") return Variant::javanainen_S;
  if (s == "generic") return Variant::generic;
  throw domain_error("unknown variant: " + s);
}

CoefficientSet coefficients(const FixedPoint& fp, const ModelParams& p,
                            Variant variant) {
  p.validate();
  if (fp.stability != Stability::stable_center)
    throw domain_error("coefficients: fixed point must be a stable center");

  const auto [xi, delta] = reduced_params(p);
  const double gb = p.mean_field;
  const double gamma = p.tunneling;
  const double n = p.n_total;
  const double axi = std::abs(xi);

  CoefficientSet cs;
  cs.variant = variant;

  const double c = cos_phi0(fp);
  const double u = fp.x0 * (1.0 - fp.x0);
  const double s = std::sqrt(u);
  cs.H0_at_fp = 2.0 * gamma * n * (delta * fp.x0 - xi * u + s * c);

  switch (variant) {
    case Variant::paper_S: {
      require_untilted(delta, variant);
      if (fp.branch != Branch::S)
        throw domain_error("coefficients: paper-s applies to the S point");
      // g*beta/|xi| = 2*gamma/N * sign(xi); keep the xi -> 0 limit finite.
      const double q = (xi == 0.0) ? 2.0 * gamma / n : gb / axi;
      cs.E1 = 0.0;
      cs.E2 = q;
      cs.E_J = q * n * n / 2.0;
      cs.E_C = 2.0 * gb / (1.0 + axi);
      break;
    }
    case Variant::javanainen_S: {
      require_untilted(delta, variant);
      if (fp.branch != Branch::S)
        throw domain_error("coefficients: javanainen applies to the S point");
      const double q = (xi == 0.0) ? 2.0 * gamma / n : gb / axi;
      cs.E1 = 0.0;
      cs.E2 = 0.5 * q;
      cs.E_J = q * n * n / 2.0;
      cs.E_C = 2.0 * gb + q;
      break;
    }
    case Variant::paper_Spm: {
      require_untilted(delta, variant);
      if (fp.branch != Branch::S_plus && fp.branch != Branch::S_minus)
        throw domain_error("coefficients: paper-spm applies to S+ or S-");
      if (axi <= 1.0)
        throw domain_error("coefficients: paper-spm requires |xi| > 1");
      const double sign = fp.branch == Branch::S_plus ? 1.0 : -1.0;
      cs.E1 = sign * 0.5 * gb * n * std::sqrt(1.0 - 1.0 / (xi * xi));
      cs.E2 = -gb * xi * xi;
      cs.E_J = -gb * n * n / (2.0 * xi * xi);
      cs.E_C = -2.0 * gb * (xi * xi - 1.0);
      break;
    }
    case Variant::generic: {
      // Exact derivatives of the mean-field energy surface, unreduced.
      const double w = 1.0 - 2.0 * fp.x0;
      const double h_x = delta - xi * w + w * c / (2.0 * s);
      const double h_xx = 2.0 * xi - c / (4.0 * u * s);
      const double h_pp = -s * c;
      cs.E1 = 2.0 * gamma * h_x;
      cs.E2 = 0.0;  // cross derivative vanishes at sin(phi0) = 0
      cs.E_C = 2.0 * gamma * h_xx / n;
      cs.E_J = 2.0 * gamma * n * h_pp;
      break;
    }
  }
  return cs;
}

FluctuationReport predict(const FixedPoint& fp, const ModelParams& p,
                          Variant variant) {
  FluctuationReport rep;
  rep.fixed_point = fp;
  rep.coefficients = coefficients(fp, p, variant);

  const auto [xi, delta] = reduced_params(p);
  const double axi = std::abs(xi);
  const double n = p.n_total;

  switch (variant) {
    case Variant::paper_S:
      rep.delta_n = std::sqrt(n) / (std::sqrt(2.0) * std::pow(1.0 + axi, 0.25));
      rep.delta_phi = 1.0 / rep.delta_n;
      break;
    case Variant::paper_Spm:
      rep.delta_n = std::sqrt(n) /
                    (std::sqrt(2.0 * axi) * std::pow(xi * xi - 1.0, 0.25));
      rep.delta_phi = 1.0 / rep.delta_n;
      break;
    case Variant::javanainen_S: {
      const double ratio = rep.coefficients.E_J / rep.coefficients.E_C;
      if (!(ratio > 0.0))
        throw domain_error("predict: E_J/E_C <= 0, not a center");
      rep.delta_n = std::pow(ratio, 0.25);
      rep.delta_phi = 1.0 / rep.delta_n;
      break;
    }
    case Variant::generic: {
      const double ratio = rep.coefficients.E_J / rep.coefficients.E_C;
      if (!(ratio > 0.0))
        throw domain_error("predict: E_J/E_C <= 0, not a center");
      rep.delta_n = std::pow(ratio, 0.25) / std::sqrt(2.0);
      rep.delta_phi = 1.0 / (2.0 * rep.delta_n);
      break;
    }
  }
  return rep;
}

double critical_asymptote(int n_total, double xi) {
  const double axi = std::abs(xi);
  if (!(axi > 1.0))
    throw domain_error("critical_asymptote: requires |xi| > 1");
  return std::sqrt(0.5 * n_total) * std::pow(2.0 * (axi - 1.0), -0.25);
}

ExponentFit fit_power_law(const std::vector<double>& x,
                          const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 4)
    throw domain_error("fit_power_law: need at least 4 sweep points");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  const double slope = sxy / sxx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - my - slope * (lx[i] - mx);
    ss_res += r * r;
  }
  ExponentFit fit;
  fit.exponent = slope;
  fit.fit_error = std::sqrt(ss_res / (n - 2) / sxx);
  return fit;
}

ExponentFit scaling_exponents(const ModelParams& p_base, Regime regime) {
  p_base.validate();
  const auto [xi_base, delta] = reduced_params(p_base);
  const double axi = std::abs(xi_base);
  const int points = 7;

  std::vector<double> xs, ys;
  switch (regime) {
    case Regime::weak: {
      const double ratio = p_base.mean_field / (2.0 * p_base.tunneling);
      if (!(ratio > 0.0))
        throw domain_error("scaling_exponents: weak regime needs gb/(2g) > 0");
      for (int i = 0; i < points; ++i) {
        const double n = 1e3 * std::pow(1e3, i / double(points - 1));
        const double x = ratio * n;  // |xi| grows with N
        xs.push_back(n);
        ys.push_back(std::sqrt(n) /
                     (std::sqrt(2.0) * std::pow(1.0 + x, 0.25)));
      }
      break;
    }
    case Regime::strong: {
      if (axi > 0.1)
        throw domain_error("scaling_exponents: strong regime needs |xi| <= 0.1");
      for (int i = 0; i < points; ++i) {
        const double n = 1e3 * std::pow(1e3, i / double(points - 1));
        xs.push_back(n);
        ys.push_back(std::sqrt(n) /
                     (std::sqrt(2.0) * std::pow(1.0 + axi, 0.25)));
      }
      break;
    }
    case Regime::critical: {
      const double n = p_base.n_total;
      for (int i = 0; i < points; ++i) {
        const double eps = 1e-4 * std::pow(1e2, i / double(points - 1));
        const double x = 1.0 + eps;
        xs.push_back(eps);
        ys.push_back(std::sqrt(n) /
                     (std::sqrt(2.0 * x) * std::pow(x * x - 1.0, 0.25)));
      }
      break;
    }
  }
  return fit_power_law(xs, ys);
}

}  // namespace dwbec
