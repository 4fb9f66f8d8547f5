// SPDX-License-Identifier: Apache-2.0
#include "lris/config.hpp"

#include <cmath>
#include <stdexcept>

namespace lris {

std::vector<std::string> SystemConfig::violations() const {
  std::vector<std::string> v;
  if (M < 1) v.push_back("M must be >= 1");
  if (N < M) v.push_back("N must be >= M");
  if (L < 1) v.push_back("L must be >= 1");
  if (q < 1) v.push_back("q must be >= 1");
  if (!(p > 0.0)) v.push_back("p must be > 0");
  if (!(beta_UB > 0.0)) v.push_back("beta_UB must be > 0");
  if (!(beta_LB > 0.0)) v.push_back("beta_LB must be > 0");
  if (!(beta_UL > 0.0)) v.push_back("beta_UL must be > 0");
  if (kappa_H < 0.0) v.push_back("kappa_H must be >= 0");
  if (kappa_G < 0.0) v.push_back("kappa_G must be >= 0");
  if (tx.count() != M) v.push_back("tx UPA dims must multiply to M");
  if (rx.count() != N) v.push_back("rx UPA dims must multiply to N");
  if (ris.count() != L) v.push_back("ris UPA dims must multiply to L");
  if (!(coherence_time > 0.0)) v.push_back("coherence_time must be > 0");
  if (!(gamma_th >= 0.0)) v.push_back("gamma_th must be >= 0");
  return v;
}

void SystemConfig::validate() const {
  const auto v = violations();
  if (v.empty()) return;
  std::string msg = "invalid config:";
  for (const auto& s : v) msg += " [" + s + "]";
  throw std::invalid_argument(msg);
}

UpaDims upa_for_count(int count) {
  if (count < 1) throw std::invalid_argument("upa_for_count: count must be >= 1");
  int best = 1;
  for (int v = 1; v * v <= count; ++v)
    if (count % v == 0) best = v;
  return {best, count / best};
}

}  // namespace lris
