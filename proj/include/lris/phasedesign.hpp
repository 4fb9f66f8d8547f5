// SPDX-License-Identifier: Apache-2.0
#ifndef LRIS_PHASEDESIGN_HPP
#define LRIS_PHASEDESIGN_HPP

#include <vector>

#include "lris/channel.hpp"
#include "lris/cmatrix.hpp"
#include "lris/config.hpp"
#include "lris/stats.hpp"

namespace lris {

/// Uniform discrete phase grid -pi + 2 pi k / 2^q, k = 0 .. 2^q - 1.
struct PhaseSet {
  int q = 1;
  std::vector<double> values;
  static PhaseSet with_bits(int q);
};

/// Nearest grid value under circular (mod 2 pi) distance; ties resolve to
/// the lower index.
double quantize_phase(double phi, const PhaseSet& set);

/// Closed-form single-element maximizer of det[H_tot^H H_tot] given all
/// other phases: phi* = -angle(g_i^H A_i^-1 H_-i^H h_i). With
/// `cascaded_only` the trace form (which touches the per-element channel
/// only through the product h_i g_i^H) is evaluated instead; both paths
/// agree analytically. Returns the current phase when the objective is
/// flat in phi (degenerate zero numerator).
double optimal_phase_instant(std::size_t i, const ChannelRealization& real,
                             bool cascaded_only = false);

struct PhaseDesignResult {
  std::vector<double> phases;
  std::vector<double> min_snr_trace;  // objective value per accepted sweep
  int sweeps = 0;
  bool converged = false;
};

/// Cyclic coordinate descent on quantized phases maximizing the
/// instantaneous det[H_tot^H H_tot]; the recorded trace is the minimum
/// stream SNR, kept nondecreasing (a sweep that lowers it is rolled back
/// and iteration stops). Mutates `real` to the returned design.
PhaseDesignResult algorithm1(ChannelRealization& real, const SystemConfig& cfg,
                             double eps = 1e-4, int max_sweeps = 20);

/// Precomputed steering columns for the statistical design.
struct StatisticalContext {
  std::vector<std::vector<cplx>> mu_lb;  // per element, length N
  std::vector<std::vector<cplx>> mu_ul;  // per element, length M
  double coeff = 0.0;                    // K b2 / (N (K+1))
  double delta = 0.0;
  double v_noise = 1.0;
};
/// With `perfect_csi`, delta falls back to rho and the colored-noise
/// variance to 1 (the p -> infinity specialization of the estimated-CSI
/// objective).
StatisticalContext make_statistical_context(const SystemConfig& cfg,
                                            const EquivalentScalars& sc,
                                            bool perfect_csi = false);

/// Mean matrix sum_l e^{j phi_l} mu_lb,l mu_ul,l^H for the given phases.
CMatrix statistical_mean_sum(const StatisticalContext& ctx,
                             const std::vector<double>& phases);

/// Estimated-CSI covariance for that mean: delta I + coeff X^H X.
CMatrix statistical_sigma_hat(const StatisticalContext& ctx,
                              const SystemConfig& cfg,
                              const std::vector<double>& phases);

/// Single-element maximizer of det[Sigma_hat] under statistical CSI;
/// returns the current phase when the numerator vanishes (e.g. L = 1).
double optimal_phase_statistical(std::size_t i, const SystemConfig& cfg,
                                 const StatisticalContext& ctx,
                                 const std::vector<double>& phases);

/// Coordinate descent on the Jensen lower bound
///   (N - M) (p / V) * det[Sigma_hat] / det[Sigma_hat_i].
/// Requires N > M. The trace records the bound per accepted sweep.
PhaseDesignResult algorithm2(const SystemConfig& cfg,
                             const EquivalentScalars& sc,
                             std::vector<double> init_phases,
                             double eps = 1e-4, int max_sweeps = 20,
                             bool perfect_csi = false);

}  // namespace lris

#endif  // LRIS_PHASEDESIGN_HPP
