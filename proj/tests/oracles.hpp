// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference implementations, deliberately independent of the
// library's computation paths.
#ifndef LRIS_TESTS_ORACLES_HPP
#define LRIS_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "lris/cmatrix.hpp"
#include "lris/config.hpp"
#include "lris/rng.hpp"
#include "lris/special.hpp"

namespace oracles {

inline constexpr double kPi = 3.14159265358979323846;

// Plain triple-loop product.
inline lris::CMatrix naive_matmul(const lris::CMatrix& a, const lris::CMatrix& b) {
  lris::CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      lris::cplx s{};
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

// Cofactor expansion along the first row.
inline lris::cplx cofactor_det(const lris::CMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  lris::cplx d{};
  for (std::size_t j = 0; j < n; ++j) {
    lris::CMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = a(r, c);
      }
    }
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    d += sign * a(0, j) * cofactor_det(minor);
  }
  return d;
}

inline double simpson_rec(const std::function<double(double)>& f, double a,
                          double b, double fa, double fm, double fb, double tol,
                          int depth) {
  const double m = 0.5 * (a + b);
  const double flm = f(0.5 * (a + m)), frm = f(0.5 * (m + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, tol / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, tol / 2, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12) {
  const double m = 0.5 * (a + b);
  return simpson_rec(f, a, b, f(a), f(m), f(b), tol, 44);
}

// Unscaled modified Bessel I0 by its power series (fine for arguments met
// in the quadrature oracles below).
inline double bessel_i0(double x) {
  const double h = x / 2.0;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= (h / k) * (h / k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

// E[R] of a unit-power Rician envelope with K-factor kappa, by quadrature
// over the Rician pdf.
inline double rician_envelope_mean(double kappa) {
  const double nu2 = kappa / (kappa + 1.0);
  const double nu = std::sqrt(nu2);
  const double sigma2 = 0.5 / (kappa + 1.0);  // per-quadrature variance
  auto pdf = [&](double r) {
    if (r <= 0.0) return 0.0;
    return r / sigma2 * std::exp(-(r * r + nu2) / (2.0 * sigma2)) *
           bessel_i0(r * nu / sigma2);
  };
  const double hi = nu + 14.0 * std::sqrt(sigma2) + 1.0;
  return integrate([&](double r) { return r * pdf(r); }, 0.0, hi, 1e-13);
}

// Regularized lower incomplete gamma P(a, x) (series / continued fraction),
// for the Nakagami envelope CDF oracle.
inline double reg_lower_gamma(double a, double x) {
  if (x <= 0.0) return 0.0;
  if (x < a + 1.0) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < 500; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::fabs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  const double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
  return 1.0 - q;
}

// Nakagami(m, gbar) envelope CDF.
inline double nakagami_cdf(double r, double m, double gbar) {
  if (r <= 0.0) return 0.0;
  return reg_lower_gamma(m, m * r * r / gbar);
}

inline lris::CMatrix random_matrix(std::size_t rows, std::size_t cols,
                                   lris::CounterRng& rng) {
  lris::CMatrix m(rows, cols);
  for (auto& v : m.data()) v = rng.cgaussian(1.0);
  return m;
}

// Random Hermitian positive definite B^H B + c I.
inline lris::CMatrix random_hpd(std::size_t n, lris::CounterRng& rng,
                                double ridge = 0.5) {
  const lris::CMatrix b = random_matrix(n, n, rng);
  lris::CMatrix a = lris::hermitian(b) * b;
  for (std::size_t i = 0; i < n; ++i) a(i, i) += ridge;
  return a;
}

// Random valid configuration with m >= 1 guaranteed by retry.
inline lris::SystemConfig random_config(lris::CounterRng& rng) {
  lris::SystemConfig cfg;
  for (;;) {
    cfg.M = 1 + static_cast<int>(rng.next_below(4));
    cfg.N = cfg.M + static_cast<int>(rng.next_below(5));
    cfg.L = 32 << rng.next_below(4);
    cfg.q = 1 + static_cast<int>(rng.next_below(5));
    cfg.p = std::pow(10.0, rng.uniform(-0.5, 2.5));
    cfg.beta_UB = std::pow(10.0, rng.uniform(-4.0, -1.0));
    cfg.beta_LB = std::pow(10.0, rng.uniform(-3.0, -1.0));
    cfg.beta_UL = std::pow(10.0, rng.uniform(-3.0, -1.0));
    cfg.kappa_H = rng.uniform(0.0, 15.0);
    cfg.kappa_G = rng.uniform(0.0, 15.0);
    cfg.tx = lris::upa_for_count(cfg.M);
    cfg.rx = lris::upa_for_count(cfg.N);
    cfg.ris = lris::upa_for_count(cfg.L);
    cfg.lb_rx = {rng.uniform(0.0, 2 * kPi), rng.uniform(0.0, 2 * kPi)};
    cfg.lb_ris = {rng.uniform(0.0, 2 * kPi), rng.uniform(0.0, 2 * kPi)};
    cfg.ul_ris = {rng.uniform(0.0, 2 * kPi), rng.uniform(0.0, 2 * kPi)};
    cfg.ul_tx = {rng.uniform(0.0, 2 * kPi), rng.uniform(0.0, 2 * kPi)};
    cfg.seed = rng.next_u64();
    // q = 1 with strong LoS can push the Nakagami shape below 1; retry.
    const lris::QuantizationFactors xi = lris::quantization_factors(cfg.q);
    const double a4 = std::pow(lris::avg_fading_gain(cfg.kappa_H) *
                                   lris::avg_fading_gain(cfg.kappa_G),
                               2.0);
    const double m = cfg.L * xi.xi1 * xi.xi1 * a4 /
                     (2.0 * (1.0 + xi.xi2 - 2.0 * xi.xi1 * xi.xi1 * a4));
    if (m >= 1.05) return cfg;
  }
}

}  // namespace oracles

#endif  // LRIS_TESTS_ORACLES_HPP
