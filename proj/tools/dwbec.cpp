#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "dwbec/dynamics.hpp"
#include "dwbec/fluctuation.hpp"
#include "dwbec/grid.hpp"
#include "dwbec/io.hpp"
#include "dwbec/model.hpp"
#include "dwbec/quantum.hpp"

namespace {

using namespace dwbec;

// Shared parameter block. Exactly one of the reduced pair (xi, delta) or
// the physical triple (gamma, gbeta, tilt) may be given; reduced input
// implies gamma = 1/2 so that reduced and physical time coincide.
struct ParamFlags {
  std::optional<double> xi, delta;
  std::optional<double> gamma, gbeta, tilt;
  int n_atoms = 100;

  void add_to(CLI::App& cmd, bool with_n = true) {
    cmd.add_option("--xi", xi, "reduced mean-field parameter");
    cmd.add_option("--delta", delta, "reduced tilt parameter");
    cmd.add_option("--gamma", gamma, "tunneling rate");
    cmd.add_option("--gbeta", gbeta, "mean-field coupling g*beta");
    cmd.add_option("--tilt", tilt, "well energy difference Delta");
    if (with_n) cmd.add_option("--n-atoms", n_atoms, "total atom number N");
  }

  ModelParams resolve() const {
    const bool reduced = xi.has_value();
    const bool physical = gamma.has_value() || gbeta.has_value() ||
                          tilt.has_value();
    if (reduced && physical)
      throw domain_error(
          "give either reduced (--xi/--delta) or physical "
          "(--gamma/--gbeta/--tilt) parameters, not both");
    if (reduced)
      return params_from_reduced(*xi, delta.value_or(0.0), n_atoms);
    if (physical) {
      ModelParams p;
      p.n_total = n_atoms;
      p.tunneling = gamma.value_or(0.5);
      p.mean_field = gbeta.value_or(0.0);
      p.tilt = tilt.value_or(0.0);
      p.validate();
      return p;
    }
    if (delta.has_value())
      return params_from_reduced(0.0, *delta, n_atoms);
    throw domain_error("no model parameters given");
  }
};

BifOptions bif_options(bool eq9, double root_tol, double classify_tol) {
  BifOptions opt;
  opt.convention = eq9 ? StationarityConvention::eq9_printed
                       : StationarityConvention::flow;
  opt.root_tolerance = root_tol;
  opt.classify_tolerance = classify_tol;
  return opt;
}

FixedPoint pick_branch(const std::vector<FixedPoint>& fps,
                       const std::string& branch) {
  for (const auto& fp : fps)
    if (to_string(fp.branch) == branch) return fp;
  throw domain_error("no fixed point with branch label " + branch +
                     " at these parameters");
}

void write_or_throw(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  write_text_file(path, content);
}

int run(int argc, char** argv) {
  CLI::App app{"two-mode double-well condensate toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value configuration file");
  app.get_config_formatter_base()->comment('#');

  std::string out;
  bool eq9 = false;
  double root_tol = 1e-12, classify_tol = 1e-9;

  // contour
  auto* c_contour = app.add_subcommand("contour", "reduced-energy contour grid");
  ParamFlags pf_contour;
  pf_contour.add_to(*c_contour, false);
  int grid_n = 401;
  bool serial = false;
  std::string overlay_out;
  c_contour->add_option("--grid", grid_n, "grid points per axis");
  c_contour->add_option("--out", out, "output CSV path");
  c_contour->add_option("--overlay-out", overlay_out,
                        "fixed-point overlay JSON path");
  c_contour->add_flag("--serial", serial, "use the serial fill kernel");
  c_contour->add_flag("--eq9-as-printed", eq9,
                      "use the printed fixed-point equation");

  // evolve
  auto* c_evolve = app.add_subcommand("evolve", "integrate the Josephson flow");
  ParamFlags pf_evolve;
  pf_evolve.add_to(*c_evolve, false);
  double start_x = 0.5, start_phi = 0.1, tau_end = 50.0, dtau_max = 0.1;
  double drift_tol = 1e-8;
  c_evolve->add_option("--start-x", start_x, "initial population fraction");
  c_evolve->add_option("--start-phi", start_phi, "initial phase difference");
  c_evolve->add_option("--tau-end", tau_end, "reduced integration time");
  c_evolve->add_option("--dtau-max", dtau_max, "maximum step size");
  c_evolve->add_option("--drift-tol", drift_tol, "relative energy drift cap");
  c_evolve->add_option("--out", out, "trajectory CSV path");

  // fixed-points
  auto* c_fp = app.add_subcommand("fixed-points", "locate and classify fixed points");
  ParamFlags pf_fp;
  pf_fp.add_to(*c_fp, false);
  c_fp->add_option("--out", out, "output JSON path");
  c_fp->add_flag("--eq9-as-printed", eq9);
  c_fp->add_option("--root-tol", root_tol);
  c_fp->add_option("--classify-tol", classify_tol);

  // critical
  auto* c_crit = app.add_subcommand("critical", "critical parameter xi_c(delta)");
  double crit_delta = 0.0;
  std::optional<double> d_from, d_to;
  int d_points = 11;
  c_crit->add_option("--delta", crit_delta, "single tilt value");
  c_crit->add_option("--delta-from", d_from, "sweep start");
  c_crit->add_option("--delta-to", d_to, "sweep end");
  c_crit->add_option("--delta-points", d_points, "sweep points");
  c_crit->add_option("--out", out, "output path (CSV, or JSON for one delta)");
  c_crit->add_flag("--eq9-as-printed", eq9);

  // fluct
  auto* c_fluct = app.add_subcommand("fluct", "linearized fluctuation report");
  ParamFlags pf_fluct;
  pf_fluct.add_to(*c_fluct);
  std::string variant = "generic", branch = "S";
  c_fluct->add_option("--variant", variant,
                      "paper-s | paper-spm | javanainen | generic");
  c_fluct->add_option("--branch", branch, "fixed point to expand around");
  c_fluct->add_option("--out", out, "output JSON path");
  c_fluct->add_flag("--eq9-as-printed", eq9);

  // quantum
  auto* c_q = app.add_subcommand("quantum", "exact finite-N diagonalization");
  ParamFlags pf_q;
  pf_q.add_to(*c_q);
  std::string amplitudes_out, phase_out, compare;
  bool doublet = false;
  std::optional<double> tilt_localize;
  c_q->add_option("--amplitudes-out", amplitudes_out, "CSV of n,amplitude");
  c_q->add_option("--phase-out", phase_out, "CSV of phi,p");
  c_q->add_option("--compare", compare,
                  "semiclassical variant for side-by-side delta_n");
  c_q->add_flag("--doublet", doublet, "report the localized doublet instead");
  c_q->add_option("--tilt-localize", tilt_localize,
                  "localize via a small reduced tilt instead of the doublet");
  c_q->add_option("--out", out, "output JSON path");

  // sweep
  auto* c_sweep = app.add_subcommand("sweep", "parameter sweeps of delta_n");
  std::string regime;
  std::string var = "n";
  double from = 1e3, to = 1e6;
  int points = 7;
  ParamFlags pf_sweep;
  pf_sweep.add_to(*c_sweep);
  c_sweep->add_option("--regime", regime,
                      "weak | strong | critical (standard sweeps)");
  c_sweep->add_option("--var", var, "sweep variable: n | xi");
  c_sweep->add_option("--from", from);
  c_sweep->add_option("--to", to);
  c_sweep->add_option("--points", points);
  std::string sweep_variant = "paper-s";
  c_sweep->add_option("--variant", sweep_variant);
  c_sweep->add_option("--out", out, "output CSV path");

  // let app-level options like --config appear after the subcommand name
  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; }))
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  if (c_contour->parsed()) {
    ParamFlags& pf = pf_contour;
    double xi = pf.xi.value_or(0.0), delta = pf.delta.value_or(0.0);
    if (pf.gamma || pf.gbeta || pf.tilt) {
      auto r = reduced_params(pf.resolve());
      xi = r.xi;
      delta = r.delta;
    }
    ContourGrid g = make_contour(xi, delta, grid_n, grid_n, !serial);
    if (eq9) g.overlay = find_fixed_points(xi, delta,
                                           bif_options(true, root_tol,
                                                       classify_tol));
    std::ostringstream csv;
    write_contour_csv(g, csv);
    write_or_throw(out, csv.str());
    const std::string opath =
        overlay_out.empty() ? (out.empty() ? "" : out + ".fp.json")
                            : overlay_out;
    if (!opath.empty())
      write_text_file(opath, to_json(g.overlay).dump(2) + "\n");
    return 0;
  }

  if (c_evolve->parsed()) {
    auto r = reduced_params(pf_evolve.resolve());
    IntegrateOptions opt;
    opt.energy_drift_tolerance = drift_tol;
    Trajectory traj =
        integrate({start_x, start_phi}, r.xi, r.delta, tau_end, dtau_max, opt);
    std::ostringstream csv;
    write_trajectory_csv(traj, csv);
    write_or_throw(out, csv.str());
    return 0;
  }

  if (c_fp->parsed()) {
    double xi = pf_fp.xi.value_or(0.0), delta = pf_fp.delta.value_or(0.0);
    if (pf_fp.gamma || pf_fp.gbeta || pf_fp.tilt) {
      auto r = reduced_params(pf_fp.resolve());
      xi = r.xi;
      delta = r.delta;
    }
    auto fps =
        find_fixed_points(xi, delta, bif_options(eq9, root_tol, classify_tol));
    write_or_throw(out, to_json(fps).dump(2) + "\n");
    return 0;
  }

  if (c_crit->parsed()) {
    const auto opt = bif_options(eq9, root_tol, classify_tol);
    if (d_from && d_to) {
      std::ostringstream csv;
      csv << "delta,xi_c,bracket_lo,bracket_hi\n";
      std::vector<CriticalResult> rows(d_points);
#pragma omp parallel for schedule(dynamic)
      for (int i = 0; i < d_points; ++i) {
        const double d =
            *d_from + (*d_to - *d_from) * i / std::max(1, d_points - 1);
        rows[i] = critical_xi(d, opt);
      }
      for (const auto& r : rows)
        csv << format_double(r.delta) << ',' << format_double(r.xi_c) << ','
            << format_double(r.bracket_lo) << ','
            << format_double(r.bracket_hi) << '\n';
      write_or_throw(out, csv.str());
      return 0;
    }
    CriticalResult r = critical_xi(crit_delta, opt);
    if (out.size() > 5 && out.substr(out.size() - 5) == ".json") {
      write_text_file(out, to_json(r).dump(2) + "\n");
    } else {
      std::ostringstream csv;
      csv << "delta,xi_c,bracket_lo,bracket_hi\n"
          << format_double(r.delta) << ',' << format_double(r.xi_c) << ','
          << format_double(r.bracket_lo) << ',' << format_double(r.bracket_hi)
          << '\n';
      write_or_throw(out, csv.str());
    }
    return 0;
  }

  if (c_fluct->parsed()) {
    ModelParams p = pf_fluct.resolve();
    auto r = reduced_params(p);
    auto fps = find_fixed_points(r.xi, r.delta,
                                 bif_options(eq9, root_tol, classify_tol));
    FixedPoint fp = pick_branch(fps, branch);
    FluctuationReport rep = predict(fp, p, variant_from_string(variant));
    write_or_throw(out, to_json(rep).dump(2) + "\n");
    return 0;
  }

  if (c_q->parsed()) {
    ModelParams p = pf_q.resolve();
    if (doublet) {
      DoubletReport rep = localized_doublet(build(p), p);
      write_or_throw(out, to_json(rep).dump(2) + "\n");
      return 0;
    }
    ModelParams p_run = p;
    if (tilt_localize) p_run.tilt = *tilt_localize * 2.0 * p.tunneling;
    QuantumGroundReport rep = ground_state(build(p_run));
    nlohmann::json j = to_json(rep);
    if (!compare.empty()) {
      auto r = reduced_params(p);
      auto fps = find_fixed_points(r.xi, r.delta);
      FixedPoint fp = pick_branch(fps, p.mean_field < 0.0 ? "S+" : "S");
      FluctuationReport f = predict(fp, p, variant_from_string(compare));
      j["semiclassical"] = to_json(f);
      j["delta_n_ratio_exact_over_predicted"] = rep.delta_n / f.delta_n;
    }
    write_or_throw(out, j.dump(2) + "\n");
    if (!amplitudes_out.empty()) {
      std::ostringstream csv;
      csv << "n,amplitude\n";
      for (std::size_t n = 0; n < rep.state.size(); ++n)
        csv << n << ',' << format_double(rep.state[n]) << '\n';
      write_text_file(amplitudes_out, csv.str());
    }
    if (!phase_out.empty()) {
      std::ostringstream csv;
      csv << "phi,p\n";
      const auto& d = rep.phase_distribution;
      for (std::size_t k = 0; k < d.phi.size(); ++k)
        csv << format_double(d.phi[k]) << ',' << format_double(d.p[k]) << '\n';
      write_text_file(phase_out, csv.str());
    }
    return 0;
  }

  if (c_sweep->parsed()) {
    std::vector<double> xs, ys;
    std::string header;
    const Variant v = variant_from_string(sweep_variant);
    if (regime == "weak" || regime == "strong" || regime == "critical") {
      ModelParams base = pf_sweep.resolve();
      Regime rg = regime == "weak"
                      ? Regime::weak
                      : (regime == "strong" ? Regime::strong
                                            : Regime::critical);
      ExponentFit fit = scaling_exponents(base, rg);
      // Re-emit the standard sweep itself for the CSV.
      const int pts = 7;
      header = rg == Regime::critical ? "xi_minus_1,delta_n" : "n,delta_n";
      auto red = reduced_params(base);
      for (int i = 0; i < pts; ++i) {
        if (rg == Regime::critical) {
          const double eps = 1e-4 * std::pow(1e2, i / double(pts - 1));
          xs.push_back(eps);
          ys.push_back(std::sqrt((double)base.n_total) /
                       (std::sqrt(2.0 * (1 + eps)) *
                        std::pow((1 + eps) * (1 + eps) - 1.0, 0.25)));
        } else {
          const double n = 1e3 * std::pow(1e3, i / double(pts - 1));
          const double x = rg == Regime::weak
                               ? n * base.mean_field / (2 * base.tunneling)
                               : std::abs(red.xi);
          xs.push_back(n);
          ys.push_back(std::sqrt(n) /
                       (std::sqrt(2.0) * std::pow(1.0 + x, 0.25)));
        }
      }
      std::cerr << "fitted exponent: " << fit.exponent << " +- "
                << fit.fit_error << "\n";
    } else {
      // Generic delta_n sweep over N or xi at otherwise fixed parameters.
      header = var + ",delta_n";
      xs.resize(points);
      ys.resize(points);
      const bool log_spacing = from > 0.0 && to > 0.0;
#pragma omp parallel for schedule(dynamic)
      for (int i = 0; i < points; ++i) {
        const double t = points > 1 ? i / double(points - 1) : 0.0;
        const double val = log_spacing
                               ? from * std::pow(to / from, t)
                               : from + (to - from) * t;
        ModelParams p = pf_sweep.resolve();
        if (var == "n") {
          p = params_from_reduced(pf_sweep.xi.value_or(0.0),
                                  pf_sweep.delta.value_or(0.0),
                                  static_cast<int>(val));
        } else if (var == "xi") {
          p = params_from_reduced(val, pf_sweep.delta.value_or(0.0),
                                  p.n_total);
        } else {
          throw domain_error("sweep: unknown variable " + var);
        }
        auto r = reduced_params(p);
        auto fps = find_fixed_points(r.xi, r.delta);
        const std::string want =
            (v == Variant::paper_Spm) ? "S+" : "S";
        FluctuationReport rep = predict(pick_branch(fps, want), p, v);
        xs[i] = val;
        ys[i] = rep.delta_n;
      }
    }
    std::ostringstream csv;
    csv << header << '\n';
    for (std::size_t i = 0; i < xs.size(); ++i)
      csv << format_double(xs[i]) << ',' << format_double(ys[i]) << '\n';
    write_or_throw(out, csv.str());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const dwbec::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const dwbec::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const dwbec::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  }
}
