// SPDX-License-Identifier: Apache-2.0
#ifndef LRIS_CONFIG_HPP
#define LRIS_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace lris {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

struct UpaDims {
  int v = 1;  // vertical element count
  int h = 1;  // horizontal element count
  int count() const { return v * h; }
};

struct SteerAngles {
  double theta = 0.0;  // vertical angle, radians
  double psi = 0.0;    // horizontal angle, radians
};

/// All scalar system parameters. Every value is linear scale; dB happens
/// only at the config boundary (file/CLI parsing).
struct SystemConfig {
  int M = 4;   // transmit antennas
  int N = 8;   // receive antennas, N >= M
  int L = 256; // surface elements
  int q = 2;   // phase quantization bits

  double p = 1.0;         // transmit SNR (linear)
  double beta_UB = 1e-4;  // direct-link large-scale gain
  double beta_LB = 1e-2;  // surface-to-receiver gain
  double beta_UL = 1e-1;  // transmitter-to-surface gain
  double kappa_H = 1.9952623149688795;  // Rician factor, surface-to-receiver
  double kappa_G = 1.9952623149688795;  // Rician factor, transmitter-to-surface

  UpaDims tx{2, 2};
  UpaDims rx{4, 2};
  UpaDims ris{16, 16};

  // Steering contexts: surface-to-receiver link (receiver side, surface
  // side) and transmitter-to-surface link (surface side, transmitter side).
  SteerAngles lb_rx, lb_ris, ul_ris, ul_tx;

  double coherence_time = 1200.0;  // samples per block
  double gamma_th = 1.0;           // outage threshold (linear)
  std::uint64_t seed = 1;

  /// Returns a list of violations; empty when valid.
  std::vector<std::string> violations() const;

  /// Throws std::invalid_argument listing all violations.
  void validate() const;
};

/// Picks (v, h) with v*h == count and v as close to sqrt(count) as the
/// divisors allow. Used when a sweep changes an array size.
UpaDims upa_for_count(int count);

}  // namespace lris

#endif  // LRIS_CONFIG_HPP
