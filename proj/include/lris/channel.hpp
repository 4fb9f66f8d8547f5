// SPDX-License-Identifier: Apache-2.0
#ifndef LRIS_CHANNEL_HPP
#define LRIS_CHANNEL_HPP

#include <vector>

#include "lris/cmatrix.hpp"
#include "lris/config.hpp"
#include "lris/rng.hpp"

namespace lris {

/// Half-wavelength UPA steering vector of length Fv*Fh: Kronecker product
/// of the vertical factor (phase increment pi sin(theta)) and horizontal
/// factor (phase increment pi sin(psi) cos(theta)), scaled to unit norm.
std::vector<cplx> steering_vector(int f_v, int f_h, double theta, double psi);

/// Rank-one line-of-sight matrix rx * tx^H from two steering vectors.
CMatrix los_matrix(const std::vector<cplx>& rx_steer,
                   const std::vector<cplx>& tx_steer);

/// LoS matrix rescaled by sqrt(rows*cols) so each entry has unit modulus;
/// this is the mean component entering the Rician composition.
CMatrix unit_modulus_los(const std::vector<cplx>& rx_steer,
                         const std::vector<cplx>& tx_steer);

/// One draw of the three channel matrices plus the active phase vector.
struct ChannelRealization {
  CMatrix H_D;                 // N x M direct link
  CMatrix H;                   // N x L surface-to-receiver
  CMatrix G;                   // L x M transmitter-to-surface
  std::vector<double> phases;  // length L, each in [-pi, pi)
  CMatrix H_tot;               // cached composite, N x M
};

/// Draws H_D ~ CN(0, beta_UB I) and the two Rician links
/// H = sqrt(beta) (sqrt(k/(1+k)) LoS + sqrt(1/(1+k)) W), W iid CN(0,1),
/// so per-entry second moments equal the respective betas. Phases start
/// at zero and H_tot is assembled.
ChannelRealization draw_channels(const SystemConfig& cfg, CounterRng& rng);

/// H_tot = H_D + H diag(e^{j phi}) G.
CMatrix assemble_total(const ChannelRealization& real);

/// Same composite through the rank-one series H_D + sum_l e^{j phi_l} h_l g_l^H.
CMatrix assemble_total_ranksum(const ChannelRealization& real);

/// Replaces the phase vector and refreshes the cached H_tot.
void set_phases(ChannelRealization& real, std::vector<double> phases);

/// Samples of the cascaded entry envelope |sum_l |h_l||g_l| e^{j w_l}|
/// with w_l uniform on [-2^-q pi, 2^-q pi] and unit-power Rician envelope
/// factors. Monte Carlo reference for the Nakagami envelope law.
std::vector<double> cascade_entry_magnitude_samples(const SystemConfig& cfg,
                                                    CounterRng& rng,
                                                    long count);

}  // namespace lris

#endif  // LRIS_CHANNEL_HPP
