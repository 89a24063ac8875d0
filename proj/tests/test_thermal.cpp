#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wqtherm/thermal.hpp"

using namespace wqtherm;

TEST_CASE("occupation: limits, forced points, frozen value") {
  CHECK(occupation(0.0) == 0.0);
  // e^{1/theta} = 2 forced analytically
  CHECK(occupation(1.0 / std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-14));
  // 1/(e - 1) at high precision
  CHECK(occupation(1.0) == doctest::Approx(0.58197670686932642).epsilon(1e-14));
  // classical regime n ~ theta - 1/2
  CHECK(occupation(1e4) == doctest::Approx(1e4 - 0.5).epsilon(1e-7));
  CHECK_THROWS_AS(occupation(-0.1), std::domain_error);
  CHECK_THROWS_AS(occupation(std::nan("")), std::domain_error);
}

TEST_CASE("sigma1z_thermal: limits and frozen value") {
  CHECK(sigma1z_thermal(0.0) == -1.0);
  CHECK(sigma1z_thermal(1.0) == doctest::Approx(-0.46211715726000974).epsilon(1e-14));
  // theta -> infinity approaches 0 from below
  CHECK(sigma1z_thermal(1e12) < 0.0);
  CHECK(sigma1z_thermal(1e12) > -1e-11);
  CHECK_THROWS_AS(sigma1z_thermal(-1e-9), std::domain_error);
}

TEST_CASE("x = -1/(2n+1) identity across twelve decades") {
  for (int i = 0; i <= 400; ++i) {
    const double theta = 1e-6 * std::pow(1e12, i / 400.0);
    const double x = sigma1z_thermal(theta);
    const double n = occupation(theta);
    CHECK(std::abs(x + 1.0 / (2.0 * n + 1.0)) <= 1e-12);
  }
}

TEST_CASE("x and n increase strictly with theta") {
  double prev_x = sigma1z_thermal(0.0);
  double prev_n = occupation(0.0);
  for (int i = 0; i <= 200; ++i) {
    const double theta = 0.05 * std::pow(1e3 / 0.05, i / 200.0);
    const double x = sigma1z_thermal(theta);
    const double n = occupation(theta);
    CHECK(x > prev_x);
    CHECK(n > prev_n);
    prev_x = x;
    prev_n = n;
  }
}

TEST_CASE("finite results at extreme theta") {
  for (const double theta : {1e-300, 1e-30, 1e-6, 1e6, 1e30, 1e300}) {
    const double n = occupation(theta);
    const double x = sigma1z_thermal(theta);
    CHECK(std::isfinite(n));
    CHECK(n >= 0.0);
    CHECK(std::isfinite(x));
    CHECK(x >= -1.0);
    CHECK(x < 0.0);
  }
}

TEST_CASE("steady populations") {
  const auto p0 = steady_populations(0.0);
  CHECK(p0.p_gg == 1.0);
  CHECK(p0.p_eg == 0.0);

  // infinite-temperature limit
  const auto ph = steady_populations(1e12);
  CHECK(ph.p_gg == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(ph.p_eg == doctest::Approx(0.5).epsilon(1e-10));

  // n = 1
  const auto p1 = steady_populations(1.0 / std::log(2.0));
  CHECK(p1.p_gg == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(p1.p_eg == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

  // (n+1)/(2n+1) with n = 1/(e-1), evaluated at high precision
  const auto pe = steady_populations(1.0);
  CHECK(pe.p_gg == doctest::Approx(0.73105857863000488).epsilon(1e-14));
  CHECK(pe.p_eg == doctest::Approx(0.26894142136999512).epsilon(1e-14));

  for (const double theta : {1e-2, 0.4, 1.0, 7.0, 1e2}) {
    const auto p = steady_populations(theta);
    CHECK(p.p_gg + p.p_eg == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(p.p_gg >= p.p_eg);
    CHECK(p.p_gg - p.p_eg ==
          doctest::Approx(-sigma1z_thermal(theta)).epsilon(1e-13));
  }
}

TEST_CASE("effective temperature: closed values and errors") {
  CHECK(effective_temperature(2.0 / 3.0, 1.0 / 3.0) ==
        doctest::Approx(1.4426950408889634).epsilon(1e-14));
  CHECK(effective_temperature(1.0, 0.0) == 0.0);
  CHECK_THROWS_AS(effective_temperature(0.5, 0.5), std::domain_error);
  CHECK_THROWS_AS(effective_temperature(0.3, 0.7), std::domain_error);
  CHECK_THROWS_AS(effective_temperature(0.9, 0.2), std::domain_error);  // bad sum
  CHECK_THROWS_AS(effective_temperature(-0.1, 1.1), std::domain_error);
}

TEST_CASE("round trip through the steady-state populations") {
  // Below theta ~ 1.35e-3 the excited weight e^{-1/theta} underflows even
  // the subnormal range, the pair degenerates to the exact ground state,
  // and the zero-temperature sentinel comes back; the identity is checked
  // from just above that floor.
  for (int i = 0; i <= 300; ++i) {
    const double theta = 1.5e-3 * std::pow(1e3 / 1.5e-3, i / 300.0);
    const auto p = steady_populations(theta);
    CHECK(effective_temperature(p.p_gg, p.p_eg) ==
          doctest::Approx(theta).epsilon(1e-10));
  }
  CHECK(steady_populations(1e-3).p_eg == 0.0);
  const auto pf = steady_populations(1e-3);
  CHECK(effective_temperature(pf.p_gg, pf.p_eg) == 0.0);

  CHECK(effective_temperature(steady_populations(0.7).p_gg,
                              steady_populations(0.7).p_eg) ==
        doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("kelvin conversions against the microwave reference points") {
  const double two_pi = 2.0 * std::numbers::pi;

  const double w_a = two_pi * 8.136e9;
  CHECK(kelvin_to_theta(1.0, w_a) == doctest::Approx(2.56).epsilon(0.005));
  CHECK(kelvin_to_theta(1.0, w_a) == doctest::Approx(2.5610397168).epsilon(1e-9));

  const double w_b = two_pi * 1e9;
  // per millikelvin, near 1/50
  CHECK(kelvin_to_theta(1e-3, w_b) == doctest::Approx(0.020836619136).epsilon(1e-9));
  CHECK(kelvin_to_theta(1e-3, w_b) == doctest::Approx(1.0 / 48.0).epsilon(0.04));

  CHECK(kelvin_to_theta(0.0, w_a) == 0.0);
  CHECK(theta_to_kelvin(kelvin_to_theta(0.37, w_a), w_a) ==
        doctest::Approx(0.37).epsilon(1e-14));

  CHECK_THROWS_AS(kelvin_to_theta(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(kelvin_to_theta(-1.0, w_a), std::domain_error);
  CHECK_THROWS_AS(theta_to_kelvin(1.0, -5.0), std::domain_error);
}

TEST_CASE("model parameter validation and weak-coupling warning") {
  ModelParams p;
  CHECK_NOTHROW(p.validate());
  CHECK(p.warnings().empty());

  p.J = 15.0;  // 0.15 * min(omega1, omega2)
  CHECK(p.warnings().size() == 1);

  p = ModelParams{};
  p.gamma = 0.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = ModelParams{};
  p.kappa = -1e-9;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = ModelParams{};
  p.omega1 = -1.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
}

TEST_CASE("thermal point bundles the derived quantities") {
  const auto tp = ThermalPoint::from_theta(0.8);
  CHECK(tp.theta == 0.8);
  CHECK(tp.n == occupation(0.8));
  CHECK(tp.x == sigma1z_thermal(0.8));
}
