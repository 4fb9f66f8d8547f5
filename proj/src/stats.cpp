// SPDX-License-Identifier: Apache-2.0
#include "lris/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lris/channel.hpp"

namespace lris {

EquivalentScalars equivalent_scalars(const SystemConfig& cfg) {
  cfg.validate();
  EquivalentScalars sc;
  const QuantizationFactors xi = quantization_factors(cfg.q);
  sc.xi1 = xi.xi1;
  sc.xi2 = xi.xi2;
  sc.alpha = std::sqrt(avg_fading_gain(cfg.kappa_H) * avg_fading_gain(cfg.kappa_G));
  const double a4 = sc.alpha * sc.alpha * sc.alpha * sc.alpha;
  const double x1sq = sc.xi1 * sc.xi1;
  sc.m = cfg.L * x1sq * a4 / (2.0 * (1.0 + sc.xi2 - 2.0 * x1sq * a4));
  sc.gamma_bar = x1sq * a4 * static_cast<double>(cfg.L) * cfg.L;
  if (sc.m < 1.0)
    throw std::domain_error(
        "approximation-regime violated: Nakagami shape m = " +
        std::to_string(sc.m) + " < 1 (increase L or q)");
  sc.K = std::sqrt(sc.m * sc.m - sc.m) + sc.m - 1.0;
  return sc;
}

double rho_model(const SystemConfig& cfg, const EquivalentScalars& sc) {
  return cfg.beta_UB + sc.gamma_bar * cfg.beta_LB * cfg.beta_UL / (sc.K + 1.0);
}

double mean_power(const SystemConfig& cfg, const EquivalentScalars& sc) {
  return sc.gamma_bar * sc.K * cfg.beta_LB * cfg.beta_UL / (sc.K + 1.0);
}

CMatrix mean_matrix(const SystemConfig& cfg, const EquivalentScalars& sc) {
  const auto u = steering_vector(cfg.rx.v, cfg.rx.h, cfg.lb_rx.theta, cfg.lb_rx.psi);
  const auto z = steering_vector(cfg.tx.v, cfg.tx.h, cfg.ul_tx.theta, cfg.ul_tx.psi);
  CMatrix x = los_matrix(u, z);  // unit Frobenius norm
  x *= std::sqrt(sc.gamma_bar * cfg.N * cfg.M);
  return x;
}

CMatrix covariance_sigma(const SystemConfig& cfg, const CMatrix& x,
                         const EquivalentScalars& sc) {
  if (x.rows() != static_cast<std::size_t>(cfg.N) ||
      x.cols() != static_cast<std::size_t>(cfg.M))
    throw std::invalid_argument("covariance_sigma: X must be N x M");
  const double b2 = cfg.beta_LB * cfg.beta_UL;
  CMatrix sigma = hermitian(x) * x;
  sigma *= sc.K * b2 / (cfg.N * (sc.K + 1.0));
  const double diag = rho_model(cfg, sc);
  for (int i = 0; i < cfg.M; ++i) sigma(i, i) += diag;
  return sigma;
}

double sigma_inv_diag(const SystemConfig& cfg, const EquivalentScalars& sc) {
  const double rho = rho_model(cfg, sc);
  const double w = mean_power(cfg, sc);
  return 1.0 / rho - (w / (rho * rho)) / (1.0 + w * cfg.M / rho);
}

double delta_model(const SystemConfig& cfg, const EquivalentScalars& sc) {
  const double rho = rho_model(cfg, sc);
  return rho * rho / (rho + 1.0 / (cfg.M * cfg.p));
}

double noise_variance_v(const SystemConfig& cfg, const EquivalentScalars& sc) {
  const double rho = rho_model(cfg, sc);
  return rho / (rho + 1.0) + 1.0;
}

EquivalentStats make_equivalent_stats(const SystemConfig& cfg) {
  EquivalentStats st;
  st.sc = equivalent_scalars(cfg);
  st.X = mean_matrix(cfg, st.sc);
  st.rho = rho_model(cfg, st.sc);
  st.delta = delta_model(cfg, st.sc);
  st.V_noise = noise_variance_v(cfg, st.sc);
  st.Sigma = covariance_sigma(cfg, st.X, st.sc);
  const double b2 = cfg.beta_LB * cfg.beta_UL;
  st.Sigma_hat = hermitian(st.X) * st.X;
  st.Sigma_hat *= st.sc.K * b2 / (cfg.N * (st.sc.K + 1.0));
  for (int i = 0; i < cfg.M; ++i) st.Sigma_hat(i, i) += st.delta;
  return st;
}

double outage_cdf(double x, double p, double sigma_inv_diag_value, int dof_n,
                  int dof_m, double noise_scale) {
  if (x < 0.0) throw std::domain_error("outage_cdf: threshold x must be >= 0");
  if (dof_n < dof_m || dof_m < 1)
    throw std::invalid_argument("outage_cdf: need N >= M >= 1");
  const double c = sigma_inv_diag_value * noise_scale / p;
  const double y = c * x;
  if (y <= 0.0) return 0.0;
  if (y > 745.0) return 1.0;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= dof_n - dof_m; ++k) {
    term *= y / k;
    sum += term;
  }
  const double f = 1.0 - std::exp(-y) * sum;
  return f < 0.0 ? 0.0 : f;
}

double outage_cdf_asymptotic(double x, const SystemConfig& cfg,
                             AsymptoticRegime regime) {
  if (x < 0.0) throw std::domain_error("outage_cdf_asymptotic: x must be >= 0");
  if (x == 0.0) return 0.0;
  const QuantizationFactors xi = quantization_factors(cfg.q);
  const double alpha2 =
      avg_fading_gain(cfg.kappa_H) * avg_fading_gain(cfg.kappa_G);
  const double a4 = alpha2 * alpha2;
  const double b2 = cfg.beta_LB * cfg.beta_UL;
  const double pi2 = 9.86960440108935862;  // pi^2
  double d = 0.0;
  switch (regime) {
    case AsymptoticRegime::General:
      d = cfg.beta_UB + b2 * cfg.L * (1.0 - 2.0 * xi.xi1 * xi.xi1 * a4 + xi.xi2);
      break;
    case AsymptoticRegime::OneBit:
      d = cfg.beta_UB + b2 * cfg.L * (1.0 - 8.0 * a4 / pi2);
      break;
    case AsymptoticRegime::InfiniteBits:
      d = cfg.beta_UB + b2 * 2.0 * cfg.L * (1.0 - a4);
      break;
    case AsymptoticRegime::RandomPhase:
      d = cfg.beta_UB + b2 / cfg.L;
      break;
  }
  const int order = cfg.N - cfg.M + 1;
  const double logf =
      order * std::log(x / (cfg.p * d)) - std::lgamma(order + 1.0);
  return std::exp(logf);
}

double average_se_from_c(double c, int dof_gap) {
  if (!(c > 0.0)) throw std::domain_error("average_se: need c > 0");
  if (dof_gap < 0) throw std::invalid_argument("average_se: need N >= M");
  double sum = 0.0;
  for (int k = 0; k <= dof_gap; ++k)
    sum += exp_scaled_upper_gamma_negint(k, c);
  return sum / std::log(2.0);
}

double average_se(const SystemConfig& cfg, double sigma_inv_diag_value,
                  double noise_scale) {
  const double c = sigma_inv_diag_value * noise_scale / cfg.p;
  return average_se_from_c(c, cfg.N - cfg.M);
}

double effective_se(double se, double coherence_time, int m_antennas,
                    int l_elements, bool with_lris) {
  const double t_pilot =
      with_lris ? static_cast<double>(m_antennas) * (l_elements + 1.0)
                : static_cast<double>(m_antennas);
  if (coherence_time <= t_pilot)
    throw std::runtime_error("pilot overhead exceeds block: T_pilot = " +
                             std::to_string(t_pilot) + ", CT = " +
                             std::to_string(coherence_time));
  return (coherence_time - t_pilot) / coherence_time * se;
}

}  // namespace lris
