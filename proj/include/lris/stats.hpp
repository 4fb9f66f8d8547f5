// SPDX-License-Identifier: Apache-2.0
#ifndef LRIS_STATS_HPP
#define LRIS_STATS_HPP

#include "lris/cmatrix.hpp"
#include "lris/config.hpp"
#include "lris/special.hpp"

namespace lris {

/// Scalars of the equivalent cascaded-channel model.
struct EquivalentScalars {
  double xi1 = 1.0;        // sinc(2^-q pi)
  double xi2 = 1.0;        // sinc(2^{-q+1} pi)
  double alpha = 1.0;      // sqrt(a_H a_G)
  double m = 1.0;          // Nakagami shape of the cascade envelope
  double gamma_bar = 0.0;  // mean-square envelope, xi1^2 alpha^4 L^2
  double K = 0.0;          // equivalent Rician factor
};

/// Computes (xi1, xi2, alpha, m, gamma_bar, K). Throws std::domain_error
/// "approximation-regime violated" when m < 1 (the Nakagami-to-Rician map
/// needs m >= 1, i.e. L large enough for the given q and fading).
EquivalentScalars equivalent_scalars(const SystemConfig& cfg);

/// Per-entry variance of the composite channel:
/// beta_UB + gamma_bar beta_LB beta_UL / (K+1).
double rho_model(const SystemConfig& cfg, const EquivalentScalars& sc);

/// Per-entry power carried by the deterministic (mean) cascade component:
/// gamma_bar K beta_LB beta_UL / (K+1).
double mean_power(const SystemConfig& cfg, const EquivalentScalars& sc);

/// Rank-one mean matrix of the cascade, scaled so the covariance builder
/// reproduces the cascade power: X = sqrt(gamma_bar * N * M) u z^H with u,
/// z the receive/transmit steering vectors (||X||_F^2 = N M gamma_bar).
CMatrix mean_matrix(const SystemConfig& cfg, const EquivalentScalars& sc);

/// Modified covariance of the central-Wishart surrogate for a given mean
/// matrix X:
///   Sigma = (beta_UB + gamma_bar b2/(K+1)) I_M + (K b2/(N(K+1))) X^H X,
/// b2 = beta_LB beta_UL. X is taken as passed; see mean_matrix for the
/// scaling this project uses.
CMatrix covariance_sigma(const SystemConfig& cfg, const CMatrix& x,
                         const EquivalentScalars& sc);

/// Closed-form diagonal of Sigma^{-1} (Sherman-Morrison on the rank-one
/// mean term); identical for every stream index.
double sigma_inv_diag(const SystemConfig& cfg, const EquivalentScalars& sc);

/// Estimation-error shrinkage denominator delta = rho^2/(rho + 1/(M p)).
double delta_model(const SystemConfig& cfg, const EquivalentScalars& sc);

/// Colored-noise variance per stream under estimated CSI:
/// V = rho/(rho+1) + 1, in (1, 2).
double noise_variance_v(const SystemConfig& cfg, const EquivalentScalars& sc);

/// Everything above bundled for one configuration.
struct EquivalentStats {
  EquivalentScalars sc;
  CMatrix X;          // mean matrix (see mean_matrix)
  double rho = 0.0;
  double delta = 0.0;
  double V_noise = 1.0;
  CMatrix Sigma;      // perfect-CSI Wishart covariance
  CMatrix Sigma_hat;  // estimated-CSI counterpart
};
EquivalentStats make_equivalent_stats(const SystemConfig& cfg);

/// Per-stream SNR CDF, chi-squared form:
///   F(x) = 1 - e^{-c x} sum_{k=0}^{N-M} (c x)^k / k!,
/// with c = sigma_inv_diag * noise_scale / p. noise_scale is 1 for perfect
/// CSI and V for estimated CSI (paired with the Sigma_hat diagonal).
double outage_cdf(double x, double p, double sigma_inv_diag_value, int dof_n,
                  int dof_m, double noise_scale);

enum class AsymptoticRegime { General, OneBit, InfiniteBits, RandomPhase };

/// Large-L outage approximation
///   F(x) ~ (1/(N-M+1)!) (x / (p D))^{N-M+1}
/// with D selected by regime (general xi expression, q=1, q->inf, or the
/// blind random-phase case).
double outage_cdf_asymptotic(double x, const SystemConfig& cfg,
                             AsymptoticRegime regime);

/// Average spectral efficiency in bits/s/Hz for CDF parameter c = sid *
/// noise_scale / p and dof gap N-M:
///   SE = (e^c / ln 2) sum_{k=0}^{N-M} c^k Gamma(-k, c),
/// evaluated in exponentially scaled form (no overflow for large c).
double average_se_from_c(double c, int dof_gap);
double average_se(const SystemConfig& cfg, double sigma_inv_diag_value,
                  double noise_scale);

/// Pilot-overhead discounted SE: (CT - T_pilot)/CT * se with
/// T_pilot = M (L+1) when the surface is present, else M.
double effective_se(double se, double coherence_time, int m_antennas,
                    int l_elements, bool with_lris);

}  // namespace lris

#endif  // LRIS_STATS_HPP
