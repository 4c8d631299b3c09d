#include "dwbec/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dwbec {

namespace {

// Residual family at sin(phi0) = 0, with c = cos(phi0) = +-1 kept exact.
// tilt_factor is +2 for stationarity of the flow and -1 for the printed
// fixed-point equation.
struct Residual {
  double c;
  double xi;
  double delta;
  double k;  // tilt factor

  double f(double x) const {
    const double w = 1.0 - 2.0 * x;
    const double s = std::sqrt(x * (1.0 - x));
    return w * (c - 2.0 * xi * s) + k * delta * s;
  }
  double df(double x) const {
    const double w = 1.0 - 2.0 * x;
    const double s = std::sqrt(x * (1.0 - x));
    return -2.0 * c + 4.0 * xi * s - xi * w * w / s +
           k * delta * w / (2.0 * s);
  }
  double d2f(double x) const {
    const double w = 1.0 - 2.0 * x;
    const double s = std::sqrt(x * (1.0 - x));
    const double s3 = s * s * s;
    return 2.0 * xi * w / s + xi * w * (1.0 - 0.5 * w * w) / s3 -
           k * delta / (4.0 * s3);
  }
};

template <class F>
double bisect(F&& fn, double a, double b, double fa) {
  for (int i = 0; i < 120 && b - a > 1e-16; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = fn(m);
    if (fm == 0.0) return m;
    if ((fa < 0.0) != (fm < 0.0)) {
      b = m;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

// Root isolation by the derivative chain: grid-scan f'', refine its roots,
// use them to isolate the roots of f', and those in turn isolate the roots
// of f. Robust against root pairs far closer than the grid spacing, which
// occur next to the fold.
template <class F>
std::vector<double> roots_between(F&& fn, const std::vector<double>& breaks) {
  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    const double fa = fn(a), fb = fn(b);
    if (fa == 0.0) roots.push_back(a);
    if ((fa < 0.0) != (fb < 0.0) && fa != 0.0 && fb != 0.0)
      roots.push_back(bisect(fn, a, b, fa));
  }
  const double fb = fn(breaks.back());
  if (fb == 0.0) roots.push_back(breaks.back());
  return roots;
}

std::vector<double> residual_roots(const Residual& r, int grid) {
  const double a = kBoundaryMargin, b = 1.0 - kBoundaryMargin;
  std::vector<double> scan(grid + 1);
  for (int i = 0; i <= grid; ++i)
    scan[i] = a + (b - a) * static_cast<double>(i) / grid;

  auto d2 = [&](double x) { return r.d2f(x); };
  auto d1 = [&](double x) { return r.df(x); };
  auto d0 = [&](double x) { return r.f(x); };

  std::vector<double> ext2 = roots_between(d2, scan);

  std::vector<double> breaks1{a};
  breaks1.insert(breaks1.end(), ext2.begin(), ext2.end());
  breaks1.push_back(b);
  std::vector<double> ext1 = roots_between(d1, breaks1);

  std::vector<double> breaks0{a};
  breaks0.insert(breaks0.end(), ext1.begin(), ext1.end());
  breaks0.push_back(b);
  std::vector<double> roots = roots_between(d0, breaks0);

  std::sort(roots.begin(), roots.end());
  std::vector<double> merged;
  for (double x : roots)
    if (merged.empty() || x - merged.back() > 1e-9) merged.push_back(x);
  return merged;
}

double tilt_factor(StationarityConvention conv) {
  return conv == StationarityConvention::flow ? 2.0 : -1.0;
}

Stability classify_c(double x0, double c, double xi, double tol) {
  const double u = x0 * (1.0 - x0);
  const double s = std::sqrt(u);
  const double h_xx = 2.0 * xi - c / (4.0 * u * s);
  const double h_pp = -s * c;
  const double det = h_xx * h_pp;  // cross term vanishes at sin(phi0) = 0
  if (det > tol) return Stability::stable_center;
  if (det < -tol) return Stability::unstable_saddle;
  return Stability::marginal;
}

void label_branch_group(std::vector<FixedPoint*>& grp, bool is_s_branch) {
  if (is_s_branch) {
    // Single root continuing from x = 0.5 is S.
    auto best = std::min_element(grp.begin(), grp.end(),
                                 [](const FixedPoint* a, const FixedPoint* b) {
                                   return std::abs(a->x0 - 0.5) <
                                          std::abs(b->x0 - 0.5);
                                 });
    if (best != grp.end()) (*best)->branch = Branch::S;
    return;
  }
  std::sort(grp.begin(), grp.end(),
            [](const FixedPoint* a, const FixedPoint* b) {
              return a->x0 < b->x0;
            });
  if (grp.size() == 1) {
    grp[0]->branch = Branch::P;
  } else if (grp.size() == 3) {
    grp[0]->branch = Branch::S_minus;
    grp[1]->branch = Branch::P;
    grp[2]->branch = Branch::S_plus;
  } else if (grp.size() == 2) {
    // At a fold only the continuation of P is unambiguous.
    auto best = std::min_element(grp.begin(), grp.end(),
                                 [](const FixedPoint* a, const FixedPoint* b) {
                                   return std::abs(a->x0 - 0.5) <
                                          std::abs(b->x0 - 0.5);
                                 });
    (*best)->branch = Branch::P;
  }
}

}  // namespace

double phi_value(PhiZero p) {
  return p == PhiZero::zero ? 0.0 : std::numbers::pi;
}

std::string to_string(Branch b) {
  switch (b) {
    case Branch::P: return "P";
    case Branch::S: return "S";
    case Branch::S_plus: return "S+";
    case Branch::S_minus: return "S-";
    default: return "unlabeled";
  }
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::stable_center: return "stable_center";
    case Stability::unstable_saddle: return "unstable_saddle";
    default: return "marginal";
  }
}

std::string to_string(PhiZero p) { return p == PhiZero::zero ? "0" : "pi"; }

std::vector<FixedPoint> find_fixed_points(double xi, double delta,
                                          const BifOptions& opt) {
  if (!std::isfinite(xi) || !std::isfinite(delta))
    throw domain_error("find_fixed_points: parameters must be finite");
  const double k = tilt_factor(opt.convention);

  std::vector<FixedPoint> out;
  for (PhiZero phi0 : {PhiZero::zero, PhiZero::pi}) {
    const double c = phi0 == PhiZero::zero ? 1.0 : -1.0;
    Residual r{c, xi, delta, k};
    for (double x0 : residual_roots(r, opt.scan_grid)) {
      FixedPoint fp;
      fp.x0 = x0;
      fp.phi0 = phi0;
      fp.residual = r.f(x0);
      fp.stability = classify_c(x0, c, xi, opt.classify_tolerance);
      out.push_back(fp);
    }
  }

  // Branch labels by continuity with the symmetric closed forms: S on the
  // cos(phi0) = -sign(xi) branch, P and S+- on the opposite one.
  const double cp = xi >= 0.0 ? 1.0 : -1.0;
  std::vector<FixedPoint*> p_group, s_group;
  for (auto& fp : out) {
    const double c = fp.phi0 == PhiZero::zero ? 1.0 : -1.0;
    (c == cp ? p_group : s_group).push_back(&fp);
  }
  label_branch_group(s_group, true);
  label_branch_group(p_group, false);
  return out;
}

Stability classify(const FixedPoint& fp, double xi, double delta,
                   double classify_tolerance) {
  (void)delta;
  const double c = fp.phi0 == PhiZero::zero ? 1.0 : -1.0;
  return classify_c(fp.x0, c, xi, classify_tolerance);
}

FixedPointCounts count_fixed_points(const std::vector<FixedPoint>& fps) {
  FixedPointCounts n;
  for (const auto& fp : fps) {
    if (fp.stability == Stability::stable_center) ++n.stable;
    if (fp.stability == Stability::unstable_saddle) ++n.unstable;
  }
  return n;
}

CriticalResult critical_xi(double delta, const BifOptions& opt) {
  if (std::abs(delta) > 10.0)
    throw domain_error("critical_xi: |delta| > 10 is outside the model regime");

  auto stable_count = [&](double xi) {
    return count_fixed_points(find_fixed_points(xi, delta, opt)).stable;
  };

  double lo = 0.25;
  while (stable_count(lo) != 2) {
    lo *= 0.5;
    if (lo < 1e-3)
      throw numerical_error("critical_xi: no two-state regime found");
  }
  double hi = 1.0;
  while (stable_count(hi) < 3) {
    hi *= 1.5;
    if (hi > 1e4)
      throw numerical_error("critical_xi: no three-state regime found");
  }

  while (hi - lo > 1e-10) {
    const double m = 0.5 * (lo + hi);
    if (stable_count(m) >= 3) {
      hi = m;
    } else {
      lo = m;
    }
  }

  CriticalResult res;
  res.delta = delta;
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  res.xi_c = 0.5 * (lo + hi);
  // Counts are reported a finite offset away from the bracket: right at the
  // fold the stability determinant drops below the marginal tolerance.
  const double off = 1e-6 * std::max(1.0, std::abs(res.xi_c));
  res.counts_below = count_fixed_points(find_fixed_points(lo - off, delta, opt));
  res.counts_above = count_fixed_points(find_fixed_points(hi + off, delta, opt));
  if (res.counts_below.stable != 2 || res.counts_below.unstable != 0 ||
      res.counts_above.stable != 3 || res.counts_above.unstable != 1)
    throw numerical_error(
        "critical_xi: count function non-monotone in bracket; shrink the "
        "initial bracket");
  return res;
}

ResidualPair saddle_node_condition(double x, PhiZero phi0, double xi,
                                   double delta,
                                   StationarityConvention convention) {
  detail::require_interior(x);
  Residual r{phi0 == PhiZero::zero ? 1.0 : -1.0, xi, delta,
             tilt_factor(convention)};
  return {r.f(x), r.df(x)};
}

}  // namespace dwbec
