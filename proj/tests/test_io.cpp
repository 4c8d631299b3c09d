#include <doctest.h>

#include <charconv>
#include <cmath>
#include <random>

#include "dwbec/io.hpp"

using namespace dwbec;

TEST_CASE("format_double round-trips bit for bit") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    double v = u(rng);
    if (i % 3 == 0) v = std::ldexp(v, -30);
    const std::string s = format_double(v);
    double back = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), back);
    REQUIRE(ec == std::errc());
    CHECK(back == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-1.0) == "-1");
}

TEST_CASE("fixed point JSON round-trip") {
  FixedPoint fp{0.93301270189221930, PhiZero::zero, Branch::S_plus,
                Stability::stable_center, 3.2e-17};
  nlohmann::json j = to_json(fp);
  CHECK(j["phi0"] == "0");
  CHECK(j["branch"] == "S+");
  CHECK(j["stability"] == "stable_center");
  FixedPoint back = fixed_point_from_json(j);
  CHECK(back.x0 == fp.x0);
  CHECK(back.phi0 == fp.phi0);
  CHECK(back.branch == fp.branch);
  CHECK(back.stability == fp.stability);
  CHECK(back.residual == fp.residual);

  FixedPoint s{0.5, PhiZero::pi, Branch::S, Stability::stable_center, 0.0};
  nlohmann::json js = to_json(s);
  CHECK(js["phi0"] == "pi");
  CHECK(fixed_point_from_json(js).phi0 == PhiZero::pi);
}

TEST_CASE("fixed point list JSON") {
  auto fps = find_fixed_points(1.8, 0.1);
  nlohmann::json j = to_json(fps);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == fps.size());
  for (std::size_t i = 0; i < fps.size(); ++i) {
    FixedPoint back = fixed_point_from_json(j[i]);
    CHECK(back.x0 == fps[i].x0);
    CHECK(back.branch == fps[i].branch);
  }
}

TEST_CASE("critical result JSON round-trip") {
  CriticalResult r = critical_xi(0.1);
  nlohmann::json j = to_json(r);
  CriticalResult back = critical_from_json(j);
  CHECK(back.delta == r.delta);
  CHECK(back.xi_c == r.xi_c);
  CHECK(back.bracket_lo == r.bracket_lo);
  CHECK(back.bracket_hi == r.bracket_hi);
  CHECK(back.counts_below.stable == r.counts_below.stable);
  CHECK(back.counts_above.unstable == r.counts_above.unstable);
}

TEST_CASE("fluctuation report JSON round-trip") {
  ModelParams p = params_from_reduced(2.0, 0.0, 100);
  FixedPoint s{0.5, PhiZero::pi, Branch::S, Stability::stable_center, 0.0};
  FluctuationReport r = predict(s, p, Variant::paper_S);
  nlohmann::json j = to_json(r);
  CHECK(j["coefficients"]["variant"] == "paper-s");
  FluctuationReport back = fluctuation_from_json(j);
  CHECK(back.delta_n == r.delta_n);
  CHECK(back.delta_phi == r.delta_phi);
  CHECK(back.coefficients.E_C == r.coefficients.E_C);
  CHECK(back.coefficients.variant == r.coefficients.variant);
  CHECK(back.fixed_point.x0 == r.fixed_point.x0);
}

TEST_CASE("quantum report JSON keeps moments only") {
  FockHamiltonian h = build(params_from_reduced(1.0, 0.0, 20));
  QuantumGroundReport g = ground_state(h);
  nlohmann::json j = to_json(g);
  CHECK(j.contains("energy"));
  CHECK(j.contains("mean_n"));
  CHECK(j.contains("delta_n"));
  CHECK(j.contains("delta_phi_circular"));
  CHECK_FALSE(j.contains("state"));
  CHECK_FALSE(j.contains("phase_distribution"));
  CHECK(j["delta_n"].get<double>() == g.delta_n);
}

TEST_CASE("write_text_file error path") {
  CHECK_THROWS_AS(write_text_file("/nonexistent-dir/out.txt", "x"), io_error);
}
