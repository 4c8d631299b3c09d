#pragma once

#include <string>
#include <vector>

#include "dwbec/model.hpp"

namespace dwbec {

enum class Branch { P, S, S_plus, S_minus, unlabeled };
enum class Stability { stable_center, unstable_saddle, marginal };

/// phi0 is one of the two symbols, never a float; sin(phi0) = 0 exactly.
enum class PhiZero { zero, pi };

double phi_value(PhiZero p);
std::string to_string(Branch b);
std::string to_string(Stability s);
std::string to_string(PhiZero p);

struct FixedPoint {
  double x0 = 0.5;
  PhiZero phi0 = PhiZero::zero;
  Branch branch = Branch::unlabeled;
  Stability stability = Stability::marginal;
  double residual = 0.0;
};

/// Which stationarity residual defines the fixed points. `flow` is the
/// zero set of the reduced equations of motion and is the default; the
/// printed fixed-point equation differs from it by a factor in the tilt
/// term and is kept selectable for comparison.
enum class StationarityConvention { flow, eq9_printed };

struct BifOptions {
  StationarityConvention convention = StationarityConvention::flow;
  double root_tolerance = 1e-12;
  double classify_tolerance = 1e-9;
  int scan_grid = 4096;
};

/// All interior fixed points with phi0 in {0, pi}, classified and labeled.
std::vector<FixedPoint> find_fixed_points(double xi, double delta,
                                          const BifOptions& opt = {});

/// Center vs saddle from the sign of det Hess h at the point (the flow
/// Jacobian is traceless, so the determinant decides).
Stability classify(const FixedPoint& fp, double xi, double delta,
                   double classify_tolerance = 1e-9);

struct FixedPointCounts {
  int stable = 0;
  int unstable = 0;
};

struct CriticalResult {
  double xi_c = 0.0;
  double delta = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  FixedPointCounts counts_below;
  FixedPointCounts counts_above;
};

/// Bisection on |xi| of the stable-fixed-point count (2 below, 3 above),
/// bracket width <= 1e-9.
CriticalResult critical_xi(double delta, const BifOptions& opt = {});

struct ResidualPair {
  double f = 0.0;
  double df_dx = 0.0;
};

/// Stationarity residual and its analytic x-derivative; both vanish at a
/// fold, certifying the bifurcation independently of the count bisection.
ResidualPair saddle_node_condition(
    double x, PhiZero phi0, double xi, double delta,
    StationarityConvention convention = StationarityConvention::flow);

FixedPointCounts count_fixed_points(const std::vector<FixedPoint>& fps);

}  // namespace dwbec
