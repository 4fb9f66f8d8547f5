// SPDX-License-Identifier: Apache-2.0
#include "lris/special.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lris {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;
}  // namespace

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(x) / x;
}

QuantizationFactors quantization_factors(int q) {
  if (q < 1)
    throw std::invalid_argument("quantization_factors: q must be >= 1, got " +
                                std::to_string(q));
  const int qc = std::min(q, 60);
  return {sinc(std::ldexp(kPi, -qc)), sinc(std::ldexp(kPi, -qc + 1))};
}

namespace {

// Asymptotic series of e^{-x} I_nu(x), valid for large x.
double bessel_scaled_asymptotic(double x, int nu) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0, sum = 1.0, prev = HUGE_VAL;
  for (int k = 1; k < 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * x);
    if (std::abs(term) >= prev) break;  // asymptotic tail started growing
    sum += term;
    prev = std::abs(term);
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

double bessel_scaled_series(double x, int nu) {
  // e^{-x} sum_k (x/2)^{2k+nu} / (k! (k+nu)!)
  const double h = x / 2.0;
  double term = (nu == 0) ? 1.0 : h;
  double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= h * h / (static_cast<double>(k) * (k + nu));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum * std::exp(-x);
}

}  // namespace

double bessel_i0_scaled(double x) {
  if (x < 0.0) throw std::domain_error("bessel_i0_scaled: x must be >= 0");
  return (x < 18.0) ? bessel_scaled_series(x, 0) : bessel_scaled_asymptotic(x, 0);
}

double bessel_i1_scaled(double x) {
  if (x < 0.0) throw std::domain_error("bessel_i1_scaled: x must be >= 0");
  return (x < 18.0) ? bessel_scaled_series(x, 1) : bessel_scaled_asymptotic(x, 1);
}

double kummer_1f1_half(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw std::domain_error("kummer_1f1_half: kappa must be finite and >= 0");
  if (kappa <= 30.0) {
    // 1F1(a,b;z) = sum_n (a)_n / (b)_n z^n / n!, a = -1/2, b = 1, z = -kappa.
    double term = 1.0, sum = 1.0, comp = 0.0;
    for (int n = 0; n < 200; ++n) {
      term *= (n - 0.5) * (-kappa) / ((n + 1.0) * (n + 1.0));
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      if (n > kappa && std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  const double h = kappa / 2.0;
  return (1.0 + kappa) * bessel_i0_scaled(h) + kappa * bessel_i1_scaled(h);
}

double avg_fading_gain(double kappa) {
  return std::sqrt(kPi / (4.0 * (kappa + 1.0))) * kummer_1f1_half(kappa);
}

namespace {

// Continued fraction (modified Lentz) for Gamma(a, x) = e^{-x} x^a * H(a,x).
// Valid for x >= 1 and a <= 0; returns H.
double upper_gamma_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h;
}

}  // namespace

double expint_e1(double x) {
  if (!(x > 0.0)) throw std::domain_error("expint_e1: x must be > 0");
  if (x <= 1.0) {
    // E1(x) = -gamma - ln x + sum (-1)^{n+1} x^n / (n n!)
    double sum = -kEulerGamma - std::log(x);
    double term = 1.0;
    for (int n = 1; n < 60; ++n) {
      term *= -x / n;
      sum -= term / n;
      if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-30)) break;
    }
    return sum;
  }
  return std::exp(-x) * upper_gamma_cf(0.0, x);
}

double exp_scaled_upper_gamma_negint(int k, double x) {
  if (k < 0) throw std::domain_error("upper gamma: order -k needs k >= 0");
  if (!(x > 0.0)) throw std::domain_error("upper gamma: x must be > 0");
  if (x >= 1.0) {
    // e^x Gamma(-k, x) = x^{-k} H(-k, x)
    return std::pow(x, -k) * upper_gamma_cf(-static_cast<double>(k), x);
  }
  // Downward recurrence from P_0 = e^x E1(x); stable for x < 1 since
  // x^{-k} dominates P_{k-1}.
  double p = std::exp(x) * expint_e1(x);
  double xk = 1.0;
  for (int j = 1; j <= k; ++j) {
    xk /= x;  // x^{-j}
    p = (xk - p) / j;
  }
  return p;
}

double upper_gamma_negint(int k, double x) {
  return std::exp(-x) * exp_scaled_upper_gamma_negint(k, x);
}

}  // namespace lris
