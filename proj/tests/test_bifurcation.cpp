#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "dwbec/bifurcation.hpp"

using namespace dwbec;

namespace {

const FixedPoint* find_branch(const std::vector<FixedPoint>& fps, Branch b) {
  for (const auto& fp : fps)
    if (fp.branch == b) return &fp;
  return nullptr;
}

// Independent oracle: dense sign-change scan of the stationarity residual.
std::vector<double> brute_roots(double c, double xi, double delta, int n) {
  std::vector<double> roots;
  auto f = [&](double x) {
    const double s = std::sqrt(x * (1.0 - x));
    return (1.0 - 2.0 * x) * (c - 2.0 * xi * s) + 2.0 * delta * s;
  };
  const double a = 1e-9, b = 1.0 - 1e-9;
  double prev = f(a);
  for (int i = 1; i <= n; ++i) {
    const double x = a + (b - a) * i / n;
    const double cur = f(x);
    if ((prev < 0.0) != (cur < 0.0))
      roots.push_back(a + (b - a) * (i - 0.5) / n);
    prev = cur;
  }
  return roots;
}

}  // namespace

TEST_CASE("closed forms at delta = 0") {
  for (double xi : {0.3, 0.99, 1.01, 2.0, 5.0, -0.3, -0.99, -1.01, -2.0, -5.0}) {
    auto fps = find_fixed_points(xi, 0.0);
    const double axi = std::abs(xi);
    const PhiZero phi_p = xi > 0.0 ? PhiZero::zero : PhiZero::pi;
    const PhiZero phi_s = xi > 0.0 ? PhiZero::pi : PhiZero::zero;

    const auto* p = find_branch(fps, Branch::P);
    REQUIRE(p != nullptr);
    CHECK(std::abs(p->x0 - 0.5) < 1e-10);
    CHECK(p->phi0 == phi_p);

    const auto* s = find_branch(fps, Branch::S);
    REQUIRE(s != nullptr);
    CHECK(std::abs(s->x0 - 0.5) < 1e-10);
    CHECK(s->phi0 == phi_s);
    CHECK(s->stability == Stability::stable_center);

    const auto* sp = find_branch(fps, Branch::S_plus);
    const auto* sm = find_branch(fps, Branch::S_minus);
    if (axi >= 1.001) {
      const double root = 0.5 * std::sqrt(1.0 - 1.0 / (xi * xi));
      REQUIRE(sp != nullptr);
      REQUIRE(sm != nullptr);
      CHECK(std::abs(sp->x0 - (0.5 + root)) < 1e-10);
      CHECK(std::abs(sm->x0 - (0.5 - root)) < 1e-10);
      CHECK(sp->phi0 == phi_p);
      CHECK(sm->phi0 == phi_p);
      CHECK(sp->stability == Stability::stable_center);
      CHECK(sm->stability == Stability::stable_center);
      CHECK(p->stability == Stability::unstable_saddle);
    } else {
      CHECK(sp == nullptr);
      CHECK(sm == nullptr);
      CHECK(p->stability == Stability::stable_center);
    }
  }
}

TEST_CASE("figure parameter-set census") {
  auto census = [](double xi, double d) {
    return count_fixed_points(find_fixed_points(xi, d));
  };
  CHECK(census(0.6, 0.0).stable == 2);
  CHECK(census(0.6, 0.0).unstable == 0);
  CHECK(census(1.8, 0.0).stable == 3);
  CHECK(census(1.8, 0.0).unstable == 1);
  CHECK(census(1.1, 0.1).stable == 2);
  CHECK(census(1.1, 0.1).unstable == 0);
  CHECK(census(1.8, 0.1).stable == 3);
  CHECK(census(1.8, 0.1).unstable == 1);

  // tilted case: the phi = 0 stable pair is asymmetric about x = 1/2
  auto fps = find_fixed_points(1.8, 0.1);
  const auto* sp = find_branch(fps, Branch::S_plus);
  const auto* sm = find_branch(fps, Branch::S_minus);
  REQUIRE(sp != nullptr);
  REQUIRE(sm != nullptr);
  CHECK(std::abs((sp->x0 - 0.5) - (0.5 - sm->x0)) > 1e-4);
}

TEST_CASE("broken-pair locations in closed form at xi = 2") {
  auto fps = find_fixed_points(2.0, 0.0);
  REQUIRE(fps.size() == 4);
  const auto* sp = find_branch(fps, Branch::S_plus);
  const auto* sm = find_branch(fps, Branch::S_minus);
  REQUIRE(sp != nullptr);
  REQUIRE(sm != nullptr);
  CHECK(sp->x0 == doctest::Approx(0.93301270189221930).epsilon(1e-12));
  CHECK(sm->x0 == doctest::Approx(0.06698729810778065).epsilon(1e-12));
}

TEST_CASE("classification of P across the threshold") {
  FixedPoint p{0.5, PhiZero::zero, Branch::P, Stability::marginal, 0.0};
  CHECK(classify(p, 0.5, 0.0) == Stability::stable_center);
  CHECK(classify(p, 1.5, 0.0) == Stability::unstable_saddle);
  CHECK(classify(p, 1.0, 0.0) == Stability::marginal);
}

TEST_CASE("critical parameter") {
  CriticalResult r0 = critical_xi(0.0);
  CHECK(std::abs(r0.xi_c - 1.0) <= 1e-9);
  CHECK(r0.bracket_hi - r0.bracket_lo <= 1e-9);
  CHECK(r0.counts_below.stable == 2);
  CHECK(r0.counts_below.unstable == 0);
  CHECK(r0.counts_above.stable == 3);
  CHECK(r0.counts_above.unstable == 1);

  CriticalResult r1 = critical_xi(0.1);
  CHECK(r1.xi_c >= 1.30);
  CHECK(r1.xi_c <= 1.44);

  CriticalResult r2 = critical_xi(-0.1);
  CHECK(r2.xi_c == doctest::Approx(r1.xi_c).epsilon(1e-8));

  CHECK_THROWS_AS(critical_xi(11.0), domain_error);
}

TEST_CASE("printed-equation convention is selectable") {
  BifOptions eq9;
  eq9.convention = StationarityConvention::eq9_printed;
  // identical at delta = 0
  auto a = find_fixed_points(2.0, 0.0);
  auto b = find_fixed_points(2.0, 0.0, eq9);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a[i].x0 == doctest::Approx(b[i].x0).epsilon(1e-12));
  // different threshold at delta != 0
  CriticalResult r = critical_xi(0.1, eq9);
  CHECK(r.xi_c < critical_xi(0.1).xi_c);
}

TEST_CASE("saddle-node condition") {
  auto fold = saddle_node_condition(0.5, PhiZero::zero, 1.0, 0.0);
  CHECK(fold.f == 0.0);
  CHECK(fold.df_dx == 0.0);

  auto simple = saddle_node_condition(0.5, PhiZero::zero, 0.5, 0.0);
  CHECK(simple.f == 0.0);
  CHECK(std::abs(simple.df_dx) > 0.1);

  CHECK_THROWS_AS(saddle_node_condition(1e-12, PhiZero::zero, 1.0, 0.0),
                  domain_error);
}

TEST_CASE("fold certificate agrees with the count bisection at delta = 0.1") {
  const double delta = 0.1;
  const CriticalResult crit = critical_xi(delta);

  // 2D Newton on (f, df_dx) in (x, xi) with a finite-difference Jacobian;
  // this route never calls the count bisection.
  double x = 0.6, xi = 1.3;
  for (int it = 0; it < 60; ++it) {
    auto r = saddle_node_condition(x, PhiZero::zero, xi, delta);
    const double e = 1e-7;
    auto rx = saddle_node_condition(x + e, PhiZero::zero, xi, delta);
    auto rxi = saddle_node_condition(x, PhiZero::zero, xi + e, delta);
    const double j11 = (rx.f - r.f) / e, j12 = (rxi.f - r.f) / e;
    const double j21 = (rx.df_dx - r.df_dx) / e,
                 j22 = (rxi.df_dx - r.df_dx) / e;
    const double det = j11 * j22 - j12 * j21;
    REQUIRE(std::abs(det) > 1e-14);
    x -= (j22 * r.f - j12 * r.df_dx) / det;
    xi -= (-j21 * r.f + j11 * r.df_dx) / det;
    x = std::clamp(x, 0.01, 0.99);
  }
  auto r = saddle_node_condition(x, PhiZero::zero, xi, delta);
  CHECK(std::abs(r.f) < 1e-10);
  CHECK(std::abs(r.df_dx) < 1e-8);
  CHECK(std::abs(xi - crit.xi_c) < 1e-6);
}

TEST_CASE("brute-force scan oracle matches the root finder") {
  std::mt19937 rng(123);
  std::uniform_real_distribution<double> uxi(-3.0, 3.0), ud(-0.5, 0.5);
  const int grid = 1000000;
  const double spacing = 1.0 / grid;
  for (int trial = 0; trial < 50; ++trial) {
    const double xi = uxi(rng), d = ud(rng);
    auto fps = find_fixed_points(xi, d);
    for (PhiZero phi0 : {PhiZero::zero, PhiZero::pi}) {
      const double c = phi0 == PhiZero::zero ? 1.0 : -1.0;
      auto brute = brute_roots(c, xi, d, grid);
      std::vector<double> fine;
      for (const auto& fp : fps)
        if (fp.phi0 == phi0) fine.push_back(fp.x0);
      std::sort(fine.begin(), fine.end());
      REQUIRE(brute.size() == fine.size());
      for (std::size_t i = 0; i < brute.size(); ++i)
        CHECK(std::abs(brute[i] - fine[i]) < 2.0 * spacing);
    }
  }
}

TEST_CASE("mirror symmetry in the tilt") {
  for (auto [xi, d] : {std::pair{1.8, 0.1}, {0.9, 0.3}, {-1.5, 0.2}}) {
    auto a = find_fixed_points(xi, d);
    auto b = find_fixed_points(xi, -d);
    REQUIRE(a.size() == b.size());
    std::vector<double> xa, xb;
    for (const auto& fp : a) xa.push_back(fp.x0);
    for (const auto& fp : b) xb.push_back(1.0 - fp.x0);
    std::sort(xa.begin(), xa.end());
    std::sort(xb.begin(), xb.end());
    for (std::size_t i = 0; i < xa.size(); ++i)
      CHECK(xa[i] == doctest::Approx(xb[i]).epsilon(1e-10));
  }
}

TEST_CASE("residual invariant holds for every returned point") {
  for (auto [xi, d] : {std::pair{0.6, 0.0}, {1.8, 0.1}, {-2.0, -0.3}}) {
    for (const auto& fp : find_fixed_points(xi, d))
      CHECK(std::abs(fp.residual) < 1e-12);
  }
}
