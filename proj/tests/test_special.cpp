// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "lris/special.hpp"
#include "oracles.hpp"

using namespace lris;
using oracles::integrate;
using oracles::kPi;

TEST_CASE("quantization factors at the resolution extremes") {
  const QuantizationFactors q1 = quantization_factors(1);
  CHECK(std::fabs(q1.xi1 - 2.0 / kPi) < 1e-15);
  CHECK(std::fabs(q1.xi2) < 1e-15);

  const QuantizationFactors qi = quantization_factors(80);  // clamped
  CHECK(std::fabs(qi.xi1 - 1.0) < 1e-15);
  CHECK(std::fabs(qi.xi2 - 1.0) < 1e-15);

  const QuantizationFactors q2 = quantization_factors(2);
  CHECK(q2.xi1 == doctest::Approx(0.90031631615710607).epsilon(1e-12));
  CHECK(q2.xi2 == doctest::Approx(0.63661977236758134).epsilon(1e-12));

  CHECK_THROWS_AS(quantization_factors(0), std::invalid_argument);
}

TEST_CASE("kummer 1F1(-1/2,1;-k) at zero") { CHECK(kummer_1f1_half(0.0) == 1.0); }

TEST_CASE("average fading gain endpoints") {
  CHECK(std::fabs(avg_fading_gain(0.0) - std::sqrt(kPi) / 2.0) < 1e-15);
  // Pure line of sight: alpha -> 1.
  const double a = avg_fading_gain(1e9);
  CHECK(std::fabs(a - 1.0) < 1e-3);
}

TEST_CASE("average fading gain equals the Rician envelope mean (quadrature)") {
  for (double kappa : {0.3, 1.0, 10.0, 25.0, 35.0, 60.0}) {
    const double ref = oracles::rician_envelope_mean(kappa);
    CHECK(avg_fading_gain(kappa) == doctest::Approx(ref).epsilon(1e-8));
  }
}

TEST_CASE("series and Bessel branches meet at the switchover") {
  // kappa = 30 uses the series, 30 + eps the Bessel form.
  const double below = avg_fading_gain(29.999999);
  const double above = avg_fading_gain(30.000001);
  CHECK(std::fabs(below - above) < 1e-9);
}

TEST_CASE("exponential integral E1") {
  CHECK(expint_e1(1.0) == doctest::Approx(0.21938393439552027).epsilon(1e-12));
  CHECK_THROWS_AS(expint_e1(0.0), std::domain_error);
  CHECK_THROWS_AS(expint_e1(-1.0), std::domain_error);
}

TEST_CASE("upper incomplete gamma at order 0 equals E1") {
  for (double x : {0.2, 1.0, 3.0, 10.0})
    CHECK(upper_gamma_negint(0, x) == doctest::Approx(expint_e1(x)).epsilon(1e-12));
}

TEST_CASE("Gamma(-1, x) against tail quadrature") {
  for (double x : {0.4, 0.7, 1.5, 4.0}) {
    const double ref = integrate(
        [](double t) { return std::exp(-t) / (t * t); }, x, x + 60.0, 1e-14);
    CHECK(upper_gamma_negint(1, x) == doctest::Approx(ref).epsilon(1e-8));
  }
}

TEST_CASE("Gamma(-2, x) against tail quadrature") {
  for (double x : {0.7, 2.0}) {
    const double ref = integrate(
        [](double t) { return std::exp(-t) / (t * t * t); }, x, x + 60.0, 1e-14);
    CHECK(upper_gamma_negint(2, x) == doctest::Approx(ref).epsilon(1e-8));
  }
}

TEST_CASE("downward recurrence is self-consistent") {
  // Gamma(-k+1, x) = (x^{-k} e^{-x} - Gamma(-k, x)) * (-(-k)) rearranged:
  // Gamma(-k+1, x) = -k Gamma(-k, x) + x^{-k} e^{-x}.
  for (double x : {0.5, 1.3, 6.0}) {
    for (int k = 1; k <= 5; ++k) {
      const double lhs = upper_gamma_negint(k - 1, x);
      const double rhs =
          -k * upper_gamma_negint(k, x) + std::pow(x, -k) * std::exp(-x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("scaled form survives arguments where e^x overflows") {
  const double c = 800.0;  // e^c alone would overflow
  for (int k = 0; k <= 4; ++k) {
    const double v = exp_scaled_upper_gamma_negint(k, c);
    CHECK(std::isfinite(v));
    CHECK(v > 0.0);
    CHECK(v < 1.0 / c);  // e^x Gamma(-k, x) < x^{-k-1} <= 1/x for x >= 1
  }
  CHECK_THROWS_AS(exp_scaled_upper_gamma_negint(0, 0.0), std::domain_error);
  CHECK_THROWS_AS(exp_scaled_upper_gamma_negint(0, -2.0), std::domain_error);
}

TEST_CASE("scaled Bessel functions cross-check their two branches") {
  // Compare against the unscaled series oracle with explicit e^{-x}.
  for (double x : {0.5, 5.0, 17.9, 18.1, 40.0}) {
    const double ref0 = oracles::bessel_i0(x) * std::exp(-x);
    CHECK(bessel_i0_scaled(x) == doctest::Approx(ref0).epsilon(1e-10));
  }
}
