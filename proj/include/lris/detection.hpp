// SPDX-License-Identifier: Apache-2.0
#ifndef LRIS_DETECTION_HPP
#define LRIS_DETECTION_HPP

#include <vector>

#include "lris/cmatrix.hpp"

namespace lris {

struct StreamSnrs {
  std::vector<double> values;  // linear SNR per stream
  int min_index = 0;
  double min_value = 0.0;
};

/// Zero-forcing per-stream SNRs gamma_i = (p/noise_scale) / [(H^H H)^-1]_ii
/// via Cholesky of the Gram matrix. noise_scale is 1 under perfect CSI and
/// the colored-noise variance V under estimated CSI. Throws
/// "singular channel" when H is column-rank deficient.
StreamSnrs zf_snrs(const CMatrix& h, double p, double noise_scale = 1.0);

/// ZF filter W = H^dagger with W H = I.
CMatrix zf_filter(const CMatrix& h);

}  // namespace lris

#endif  // LRIS_DETECTION_HPP
