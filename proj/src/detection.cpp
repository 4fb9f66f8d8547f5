// SPDX-License-Identifier: Apache-2.0
#include "lris/detection.hpp"

#include <cmath>
#include <stdexcept>

namespace lris {

StreamSnrs zf_snrs(const CMatrix& h, double p, double noise_scale) {
  if (!(p > 0.0)) throw std::invalid_argument("zf_snrs: p must be > 0");
  if (!(noise_scale > 0.0))
    throw std::invalid_argument("zf_snrs: noise_scale must be > 0");
  const std::size_t m = h.cols();
  const CMatrix gram = hermitian(h) * h;
  CMatrix low;
  try {
    low = cholesky(gram);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("singular channel: Gram matrix not positive definite");
  }
  // [(G)^-1]_ii = || column i of L^-1 ||^2, column from L y = e_i.
  StreamSnrs out;
  out.values.resize(m);
  std::vector<cplx> y(m);
  const double scale = p / noise_scale;
  for (std::size_t i = 0; i < m; ++i) {
    std::fill(y.begin(), y.end(), cplx{});
    y[i] = 1.0;
    for (std::size_t r = i; r < m; ++r) {
      for (std::size_t c2 = i; c2 < r; ++c2) y[r] -= low(r, c2) * y[c2];
      y[r] /= low(r, r).real();
    }
    double diag = 0.0;
    for (std::size_t r = i; r < m; ++r) diag += std::norm(y[r]);
    out.values[i] = scale / diag;
  }
  out.min_index = 0;
  out.min_value = out.values[0];
  for (std::size_t i = 1; i < m; ++i)
    if (out.values[i] < out.min_value) {
      out.min_value = out.values[i];
      out.min_index = static_cast<int>(i);
    }
  return out;
}

CMatrix zf_filter(const CMatrix& h) {
  try {
    return pseudo_inverse(h);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("singular channel: pseudoinverse does not exist");
  }
}

}  // namespace lris
