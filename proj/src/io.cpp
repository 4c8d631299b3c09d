#include "dwbec/io.hpp"

#include <charconv>
#include <fstream>

namespace dwbec {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

Branch branch_from_string(const std::string& s) {
  if (s == "P") return Branch::P;
  if (s == "S") return Branch::S;
  if (s == "S+") return Branch::S_plus;
  if (s == "S-") return Branch::S_minus;
  return Branch::unlabeled;
}

Stability stability_from_string(const std::string& s) {
  if (s == "stable_center") return Stability::stable_center;
  if (s == "unstable_saddle") return Stability::unstable_saddle;
  return Stability::marginal;
}

}  // namespace

json to_json(const FixedPoint& fp) {
  return {{"x0", fp.x0},
          {"phi0", to_string(fp.phi0)},
          {"branch", to_string(fp.branch)},
          {"stability", to_string(fp.stability)},
          {"residual", fp.residual}};
}

FixedPoint fixed_point_from_json(const json& j) {
  FixedPoint fp;
  fp.x0 = j.at("x0").get<double>();
  fp.phi0 = j.at("phi0").get<std::string>() == "pi" ? PhiZero::pi
                                                    : PhiZero::zero;
  fp.branch = branch_from_string(j.at("branch").get<std::string>());
  fp.stability = stability_from_string(j.at("stability").get<std::string>());
  fp.residual = j.at("residual").get<double>();
  return fp;
}

json to_json(const std::vector<FixedPoint>& fps) {
  json arr = json::array();
  for (const auto& fp : fps) arr.push_back(to_json(fp));
  return arr;
}

json to_json(const CriticalResult& r) {
  return {{"delta", r.delta},
          {"xi_c", r.xi_c},
          {"bracket_lo", r.bracket_lo},
          {"bracket_hi", r.bracket_hi},
          {"counts_below",
           {{"stable", r.counts_below.stable},
            {"unstable", r.counts_below.unstable}}},
          {"counts_above",
           {{"stable", r.counts_above.stable},
            {"unstable", r.counts_above.unstable}}}};
}

CriticalResult critical_from_json(const json& j) {
  CriticalResult r;
  r.delta = j.at("delta").get<double>();
  r.xi_c = j.at("xi_c").get<double>();
  r.bracket_lo = j.at("bracket_lo").get<double>();
  r.bracket_hi = j.at("bracket_hi").get<double>();
  r.counts_below.stable = j.at("counts_below").at("stable").get<int>();
  r.counts_below.unstable = j.at("counts_below").at("unstable").get<int>();
  r.counts_above.stable = j.at("counts_above").at("stable").get<int>();
  r.counts_above.unstable = j.at("counts_above").at("unstable").get<int>();
  return r;
}

json to_json(const CoefficientSet& cs) {
  return {{"variant", to_string(cs.variant)},
          {"E1", cs.E1},
          {"E2", cs.E2},
          {"E_J", cs.E_J},
          {"E_C", cs.E_C},
          {"H0_at_fp", cs.H0_at_fp}};
}

json to_json(const FluctuationReport& r) {
  return {{"delta_n", r.delta_n},
          {"delta_phi", r.delta_phi},
          {"coefficients", to_json(r.coefficients)},
          {"fixed_point", to_json(r.fixed_point)}};
}

FluctuationReport fluctuation_from_json(const json& j) {
  FluctuationReport r;
  r.delta_n = j.at("delta_n").get<double>();
  r.delta_phi = j.at("delta_phi").get<double>();
  const auto& c = j.at("coefficients");
  r.coefficients.variant = variant_from_string(c.at("variant"));
  r.coefficients.E1 = c.at("E1").get<double>();
  r.coefficients.E2 = c.at("E2").get<double>();
  r.coefficients.E_J = c.at("E_J").get<double>();
  r.coefficients.E_C = c.at("E_C").get<double>();
  r.coefficients.H0_at_fp = c.at("H0_at_fp").get<double>();
  r.fixed_point = fixed_point_from_json(j.at("fixed_point"));
  return r;
}

json to_json(const QuantumGroundReport& r) {
  return {{"energy", r.energy},
          {"mean_n", r.mean_n},
          {"delta_n", r.delta_n},
          {"delta_phi_circular", r.delta_phi_circular}};
}

json to_json(const DoubletReport& r) {
  return {{"gap", r.gap},
          {"localized_delta_n", r.localized_delta_n},
          {"delta_n_minus", r.delta_n_minus},
          {"delta_n_plus", r.delta_n_plus},
          {"mean_n_minus", r.mean_n_minus},
          {"mean_n_plus", r.mean_n_plus}};
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot open for writing: " + path);
  os << content;
  if (!os) throw io_error("write failed: " + path);
}

}  // namespace dwbec
