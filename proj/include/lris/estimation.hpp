// SPDX-License-Identifier: Apache-2.0
#ifndef LRIS_ESTIMATION_HPP
#define LRIS_ESTIMATION_HPP

#include "lris/cmatrix.hpp"
#include "lris/config.hpp"
#include "lris/rng.hpp"
#include "lris/stats.hpp"

namespace lris {

/// Least-squares channel estimate simulated at the composite-channel level:
/// H_hat = H_tot + E with E iid CN(0, 1/(M p)); M training symbols at the
/// data-phase transmit SNR.
CMatrix simulate_ls_estimate(const CMatrix& h_tot, const SystemConfig& cfg,
                             CounterRng& rng);

/// Scaled mean channel sqrt(b2 K/(K+1)) applied to the power-consistent
/// mean direction; per-entry amplitude sqrt(mean_power).
CMatrix scaled_mean_channel(const SystemConfig& cfg, const EquivalentScalars& sc);

/// MMSE shrinkage factor rho / (rho + 1/(M p)).
double shrink_factor(const SystemConfig& cfg, const EquivalentScalars& sc);

/// Conditional mean of the channel given the estimate:
/// H_bar = X + (H_hat - X) * shrink.
CMatrix conditional_mean(const CMatrix& h_hat, const CMatrix& x_scaled,
                         const SystemConfig& cfg, const EquivalentScalars& sc);

struct ErrorStats {
  double R_e_scale;  // per-entry estimation-error variance rho/(M p rho + 1)
  double V_noise;    // colored-noise variance per stream, rho/(rho+1) + 1
};
ErrorStats error_stats(const SystemConfig& cfg, const EquivalentScalars& sc);

/// Estimated-CSI Wishart covariance for a given mean matrix X:
///   Sigma_hat = delta I_M + (K b2/(N(K+1))) X^H X,
/// delta = rho^2/(rho + 1/(M p)). Returns the matrix and delta.
struct SigmaHatResult {
  CMatrix sigma_hat;
  double delta;
};
SigmaHatResult sigma_hat(const SystemConfig& cfg, const CMatrix& x,
                         const EquivalentScalars& sc);

/// Closed-form diagonal of Sigma_hat^{-1}, Sherman-Morrison form.
double sigma_hat_inv_diag(const SystemConfig& cfg, const EquivalentScalars& sc);

/// Convenience bundle for one configuration and estimate draw.
struct EstimationModel {
  CMatrix H_hat;       // raw LS estimate
  CMatrix H_bar;       // conditional mean
  double R_e_scale;
  double V_noise;
  double delta;
  double shrink;
};
EstimationModel make_estimation_model(const CMatrix& h_tot,
                                      const SystemConfig& cfg,
                                      const EquivalentScalars& sc,
                                      CounterRng& rng);

}  // namespace lris

#endif  // LRIS_ESTIMATION_HPP
