#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dwbec/model.hpp"

using namespace dwbec;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("reduced parameters") {
  CHECK(reduced_params({100, 1.0, 0.02, 0.0}).xi == doctest::Approx(1.0));
  CHECK(reduced_params({100, 1.0, 0.02, 0.0}).delta == 0.0);

  auto r = reduced_params({100, 1.0, 0.036, 0.2});
  CHECK(r.xi == doctest::Approx(1.8).epsilon(1e-14));
  CHECK(r.delta == doctest::Approx(0.1).epsilon(1e-14));

  auto neg = reduced_params({1, -0.5, 1.0, 0.0});
  CHECK(neg.xi == doctest::Approx(-1.0));
  CHECK(neg.delta == 0.0);

  CHECK_THROWS_AS(reduced_params({100, 0.0, 1.0, 0.0}), domain_error);
  CHECK_THROWS_AS(reduced_params({0, 1.0, 1.0, 0.0}), domain_error);

  auto p = params_from_reduced(1.8, 0.1, 100);
  auto back = reduced_params(p);
  CHECK(back.xi == doctest::Approx(1.8).epsilon(1e-14));
  CHECK(back.delta == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(p.tunneling == 0.5);
}

TEST_CASE("wrap_phase canonical representative") {
  CHECK(wrap_phase(0.0) == 0.0);
  CHECK(wrap_phase(kPi) == kPi);
  CHECK(wrap_phase(-kPi) == kPi);
  CHECK(wrap_phase(3.0 * kPi) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(wrap_phase(2.0 * kPi) == doctest::Approx(0.0).scale(1.0));
  CHECK(wrap_phase(1.0) == 1.0);
}

TEST_CASE("reduced energy values") {
  CHECK(reduced_energy({0.5, 0.0}, 0.0, 0.0) == 0.5);
  CHECK(reduced_energy({0.5, kPi}, 2.0, 0.0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(reduced_energy({0.5, kPi}, 1.8, 0.1) ==
        doctest::Approx(-0.9).epsilon(1e-14));
  CHECK_THROWS_AS(reduced_energy({1.2, 0.0}, 0.0, 0.0), domain_error);
  CHECK_THROWS_AS(reduced_energy({-0.1, 0.0}, 0.0, 0.0), domain_error);
  // closed endpoints are allowed
  CHECK(reduced_energy({0.0, 1.0}, 1.0, 1.0) == 0.0);
}

TEST_CASE("energy periodicity and mirror symmetry") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> ux(0.0, 1.0), uphi(-kPi, kPi);
  for (int i = 0; i < 200; ++i) {
    const double x = ux(rng), phi = uphi(rng);
    CHECK(reduced_energy({x, phi}, 1.3, -0.2) ==
          doctest::Approx(reduced_energy({x, phi + 2.0 * kPi}, 1.3, -0.2))
              .epsilon(1e-13));
    // delta = 0: mirror symmetry to rounding error (1 - x is inexact)
    const double ha = reduced_energy({x, phi}, 1.3, 0.0);
    const double hb = reduced_energy({1.0 - x, phi}, 1.3, 0.0);
    CHECK(std::abs(ha - hb) <= 1e-15 * (1.0 + std::abs(ha)));
  }
}

TEST_CASE("flow field values") {
  auto f0 = flow_field({0.5, 0.0}, 0.0, 0.0);
  CHECK(f0.dx_dtau == 0.0);
  CHECK(f0.dphi_dtau == 0.0);

  auto f1 = flow_field({0.5, kPi / 2.0}, 0.0, 0.0);
  CHECK(f1.dx_dtau == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(f1.dphi_dtau == 0.0);

  auto f2 = flow_field({0.25, 0.0}, 1.0, 0.0);
  CHECK(f2.dx_dtau == 0.0);
  CHECK(f2.dphi_dtau == doctest::Approx(0.077350269189625764).epsilon(1e-14));

  CHECK_THROWS_AS(flow_field({1e-10, 0.0}, 0.0, 0.0), domain_error);
  CHECK_THROWS_AS(flow_field({1.0 - 1e-10, 0.0}, 0.0, 0.0), domain_error);
}

TEST_CASE("flow is the symplectic gradient of the energy") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ux(0.02, 0.98), uphi(-kPi, kPi),
      uxi(-3.0, 3.0), ud(-0.5, 0.5);
  const double step = 1e-6;
  double max_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = ux(rng), phi = uphi(rng), xi = uxi(rng), d = ud(rng);
    const Flow f = flow_field({x, phi}, xi, d);
    const double dh_dphi = (reduced_energy({x, phi + step}, xi, d) -
                            reduced_energy({x, phi - step}, xi, d)) /
                           (2.0 * step);
    const double dh_dx = (reduced_energy({x + step, phi}, xi, d) -
                          reduced_energy({x - step, phi}, xi, d)) /
                         (2.0 * step);
    max_err = std::max(max_err, std::abs(f.dx_dtau + dh_dphi));
    max_err = std::max(max_err, std::abs(f.dphi_dtau - dh_dx));
  }
  CHECK(max_err < 1e-8);
}

TEST_CASE("hessian values and finite-difference agreement") {
  auto h1 = energy_hessian({0.5, kPi}, 0.0, 0.0);
  CHECK(h1.h_xx == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(h1.h_xphi == doctest::Approx(0.0).scale(1.0));
  CHECK(h1.h_phiphi == doctest::Approx(0.5).epsilon(1e-14));

  auto h2 = energy_hessian({0.5, 0.0}, 0.0, 0.0);
  CHECK(h2.h_xx == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(h2.h_phiphi == doctest::Approx(-0.5).epsilon(1e-14));

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ux(0.05, 0.95), uphi(-kPi, kPi),
      uxi(-3.0, 3.0), ud(-0.5, 0.5);
  const double e = 1e-4;
  for (int i = 0; i < 200; ++i) {
    const double x = ux(rng), phi = uphi(rng), xi = uxi(rng), d = ud(rng);
    const Hessian h = energy_hessian({x, phi}, xi, d);
    auto H = [&](double xx, double pp) {
      return reduced_energy({xx, pp}, xi, d);
    };
    const double fd_xx =
        (H(x + e, phi) - 2.0 * H(x, phi) + H(x - e, phi)) / (e * e);
    const double fd_pp =
        (H(x, phi + e) - 2.0 * H(x, phi) + H(x, phi - e)) / (e * e);
    const double fd_xp = (H(x + e, phi + e) - H(x + e, phi - e) -
                          H(x - e, phi + e) + H(x - e, phi - e)) /
                         (4.0 * e * e);
    CHECK(std::abs(h.h_xx - fd_xx) < 2e-5 * std::max(1.0, std::abs(h.h_xx)));
    CHECK(std::abs(h.h_phiphi - fd_pp) <
          2e-5 * std::max(1.0, std::abs(h.h_phiphi)));
    CHECK(std::abs(h.h_xphi - fd_xp) <
          2e-5 * std::max(1.0, std::abs(h.h_xphi)));
  }
}
