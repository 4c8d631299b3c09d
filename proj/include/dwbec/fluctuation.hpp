#pragma once

#include <string>

#include "dwbec/bifurcation.hpp"
#include "dwbec/model.hpp"

namespace dwbec {

/// Coefficient conventions for the linearized oscillator around a stable
/// fixed point. The closed-form sets disagree with each other and with the
/// direct second derivatives; all are first-class and reports always carry
/// their label.
enum class Variant { paper_S, paper_Spm, javanainen_S, generic };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

struct CoefficientSet {
  Variant variant = Variant::generic;
  double E1 = 0.0;
  double E2 = 0.0;
  double E_J = 0.0;
  double E_C = 0.0;
  double H0_at_fp = 0.0;  // energy offset at the fixed point
};

CoefficientSet coefficients(const FixedPoint& fp, const ModelParams& p,
                            Variant variant);

struct FluctuationReport {
  double delta_n = 0.0;
  double delta_phi = 0.0;
  CoefficientSet coefficients;
  FixedPoint fixed_point;
};

/// Ground-state widths of the linearized oscillator. The closed-form
/// variants reproduce the published expressions verbatim, with
/// delta_n * delta_phi = 1; the generic variant carries the oscillator
/// ground-state factor, giving delta_n * delta_phi = 1/2.
FluctuationReport predict(const FixedPoint& fp, const ModelParams& p,
                          Variant variant);

/// sqrt(N/2) * (2(|xi|-1))^(-1/4); valid only just above threshold.
double critical_asymptote(int n_total, double xi);

enum class Regime { weak, strong, critical };

struct ExponentFit {
  double exponent = 0.0;
  double fit_error = 0.0;
};

/// Log-log least-squares slope of delta_n against the regime's control
/// variable: N in the weak and strong tunneling regimes, |xi|-1 near
/// threshold.
ExponentFit scaling_exponents(const ModelParams& p_base, Regime regime);

/// Least-squares slope of log(y) vs log(x) with its standard error.
ExponentFit fit_power_law(const std::vector<double>& x,
                          const std::vector<double>& y);

}  // namespace dwbec
