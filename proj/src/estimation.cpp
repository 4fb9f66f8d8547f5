// SPDX-License-Identifier: Apache-2.0
#include "lris/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace lris {

CMatrix simulate_ls_estimate(const CMatrix& h_tot, const SystemConfig& cfg,
                             CounterRng& rng) {
  const double err_var = 1.0 / (cfg.M * cfg.p);
  CMatrix h_hat = h_tot;
  for (auto& v : h_hat.data()) v += rng.cgaussian(err_var);
  return h_hat;
}

CMatrix scaled_mean_channel(const SystemConfig& cfg,
                            const EquivalentScalars& sc) {
  CMatrix x = mean_matrix(cfg, sc);
  x *= std::sqrt(cfg.beta_LB * cfg.beta_UL * sc.K / (sc.K + 1.0));
  return x;
}

double shrink_factor(const SystemConfig& cfg, const EquivalentScalars& sc) {
  const double rho = rho_model(cfg, sc);
  return rho / (rho + 1.0 / (cfg.M * cfg.p));
}

CMatrix conditional_mean(const CMatrix& h_hat, const CMatrix& x_scaled,
                         const SystemConfig& cfg, const EquivalentScalars& sc) {
  if (h_hat.rows() != x_scaled.rows() || h_hat.cols() != x_scaled.cols())
    throw std::invalid_argument("conditional_mean: shape mismatch");
  const double s = shrink_factor(cfg, sc);
  CMatrix out = x_scaled;
  for (std::size_t k = 0; k < out.data().size(); ++k)
    out.data()[k] += s * (h_hat.data()[k] - x_scaled.data()[k]);
  return out;
}

ErrorStats error_stats(const SystemConfig& cfg, const EquivalentScalars& sc) {
  const double rho = rho_model(cfg, sc);
  return {rho / (cfg.M * cfg.p * rho + 1.0), rho / (rho + 1.0) + 1.0};
}

SigmaHatResult sigma_hat(const SystemConfig& cfg, const CMatrix& x,
                         const EquivalentScalars& sc) {
  if (x.rows() != static_cast<std::size_t>(cfg.N) ||
      x.cols() != static_cast<std::size_t>(cfg.M))
    throw std::invalid_argument("sigma_hat: X must be N x M");
  const double delta = delta_model(cfg, sc);
  CMatrix s = hermitian(x) * x;
  s *= sc.K * cfg.beta_LB * cfg.beta_UL / (cfg.N * (sc.K + 1.0));
  for (int i = 0; i < cfg.M; ++i) s(i, i) += delta;
  return {std::move(s), delta};
}

double sigma_hat_inv_diag(const SystemConfig& cfg, const EquivalentScalars& sc) {
  const double delta = delta_model(cfg, sc);
  const double w = mean_power(cfg, sc);
  return 1.0 / delta - (w / (delta * delta)) / (1.0 + w * cfg.M / delta);
}

EstimationModel make_estimation_model(const CMatrix& h_tot,
                                      const SystemConfig& cfg,
                                      const EquivalentScalars& sc,
                                      CounterRng& rng) {
  EstimationModel em;
  em.H_hat = simulate_ls_estimate(h_tot, cfg, rng);
  const CMatrix x = scaled_mean_channel(cfg, sc);
  em.H_bar = conditional_mean(em.H_hat, x, cfg, sc);
  const ErrorStats es = error_stats(cfg, sc);
  em.R_e_scale = es.R_e_scale;
  em.V_noise = es.V_noise;
  em.delta = delta_model(cfg, sc);
  em.shrink = shrink_factor(cfg, sc);
  return em;
}

}  // namespace lris
