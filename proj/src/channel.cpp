// SPDX-License-Identifier: Apache-2.0
#include "lris/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace lris {

namespace {
constexpr double kPi = 3.14159265358979323846;

CMatrix gaussian_matrix(std::size_t rows, std::size_t cols, double var,
                        CounterRng& rng) {
  CMatrix m(rows, cols);
  for (auto& v : m.data()) v = rng.cgaussian(var);
  return m;
}

// sqrt(beta) (sqrt(k/(1+k)) LoS_unit + sqrt(1/(1+k)) W), W iid CN(0,1).
CMatrix rician_matrix(const CMatrix& los_unit, double beta, double kappa,
                      CounterRng& rng) {
  const double c_los = std::sqrt(beta * kappa / (1.0 + kappa));
  const double c_sc = std::sqrt(beta / (1.0 + kappa));
  CMatrix m(los_unit.rows(), los_unit.cols());
  for (std::size_t k = 0; k < m.data().size(); ++k)
    m.data()[k] = c_los * los_unit.data()[k] + c_sc * rng.cgaussian(1.0);
  return m;
}

}  // namespace

std::vector<cplx> steering_vector(int f_v, int f_h, double theta, double psi) {
  if (f_v < 1 || f_h < 1)
    throw std::invalid_argument("steering_vector: array dims must be >= 1");
  std::vector<cplx> vert(f_v), horiz(f_h);
  const double kv = kPi * std::sin(theta);
  const double kh = kPi * std::sin(psi) * std::cos(theta);
  for (int i = 0; i < f_v; ++i) vert[i] = std::polar(1.0, kv * i);
  for (int i = 0; i < f_h; ++i) horiz[i] = std::polar(1.0, kh * i);
  std::vector<cplx> out = kron(vert, horiz);
  const double scale = 1.0 / std::sqrt(static_cast<double>(f_v) * f_h);
  for (auto& v : out) v *= scale;
  return out;
}

CMatrix los_matrix(const std::vector<cplx>& rx_steer,
                   const std::vector<cplx>& tx_steer) {
  CMatrix m(rx_steer.size(), tx_steer.size());
  for (std::size_t i = 0; i < rx_steer.size(); ++i)
    for (std::size_t j = 0; j < tx_steer.size(); ++j)
      m(i, j) = rx_steer[i] * std::conj(tx_steer[j]);
  return m;
}

CMatrix unit_modulus_los(const std::vector<cplx>& rx_steer,
                         const std::vector<cplx>& tx_steer) {
  CMatrix m = los_matrix(rx_steer, tx_steer);
  const double s = std::sqrt(static_cast<double>(rx_steer.size()) *
                             static_cast<double>(tx_steer.size()));
  m *= s;
  return m;
}

ChannelRealization draw_channels(const SystemConfig& cfg, CounterRng& rng) {
  cfg.validate();
  const auto a_lb_rx = steering_vector(cfg.rx.v, cfg.rx.h, cfg.lb_rx.theta, cfg.lb_rx.psi);
  const auto a_lb_ris = steering_vector(cfg.ris.v, cfg.ris.h, cfg.lb_ris.theta, cfg.lb_ris.psi);
  const auto a_ul_ris = steering_vector(cfg.ris.v, cfg.ris.h, cfg.ul_ris.theta, cfg.ul_ris.psi);
  const auto a_ul_tx = steering_vector(cfg.tx.v, cfg.tx.h, cfg.ul_tx.theta, cfg.ul_tx.psi);

  ChannelRealization real;
  real.H_D = gaussian_matrix(cfg.N, cfg.M, cfg.beta_UB, rng);
  real.H = rician_matrix(unit_modulus_los(a_lb_rx, a_lb_ris), cfg.beta_LB,
                         cfg.kappa_H, rng);
  real.G = rician_matrix(unit_modulus_los(a_ul_ris, a_ul_tx), cfg.beta_UL,
                         cfg.kappa_G, rng);
  real.phases.assign(cfg.L, 0.0);
  real.H_tot = assemble_total(real);
  return real;
}

CMatrix assemble_total(const ChannelRealization& real) {
  const std::size_t n = real.H.rows(), l = real.H.cols(), m = real.G.cols();
  if (real.G.rows() != l || real.H_D.rows() != n || real.H_D.cols() != m ||
      real.phases.size() != l)
    throw std::invalid_argument("assemble_total: inconsistent dimensions");
  CMatrix rotated = real.H;  // H diag(e^{j phi})
  for (std::size_t c = 0; c < l; ++c) {
    const cplx f = std::polar(1.0, real.phases[c]);
    for (std::size_t r = 0; r < n; ++r) rotated(r, c) *= f;
  }
  if (l == 0) return real.H_D;
  return real.H_D + rotated * real.G;
}

CMatrix assemble_total_ranksum(const ChannelRealization& real) {
  const std::size_t n = real.H.rows(), l = real.H.cols(), m = real.G.cols();
  CMatrix out = real.H_D;
  for (std::size_t k = 0; k < l; ++k) {
    const cplx f = std::polar(1.0, real.phases[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx hf = f * real.H(i, k);
      for (std::size_t j = 0; j < m; ++j) out(i, j) += hf * real.G(k, j);
    }
  }
  return out;
}

void set_phases(ChannelRealization& real, std::vector<double> phases) {
  if (phases.size() != static_cast<std::size_t>(real.H.cols()))
    throw std::invalid_argument("set_phases: phase count mismatch");
  real.phases = std::move(phases);
  real.H_tot = assemble_total(real);
}

std::vector<double> cascade_entry_magnitude_samples(const SystemConfig& cfg,
                                                    CounterRng& rng,
                                                    long count) {
  if (count < 1)
    throw std::invalid_argument("cascade_entry_magnitude_samples: count >= 1");
  const double wmax = std::ldexp(kPi, -cfg.q);
  const double ch_los = std::sqrt(cfg.kappa_H / (1.0 + cfg.kappa_H));
  const double ch_sc = std::sqrt(1.0 / (1.0 + cfg.kappa_H));
  const double cg_los = std::sqrt(cfg.kappa_G / (1.0 + cfg.kappa_G));
  const double cg_sc = std::sqrt(1.0 / (1.0 + cfg.kappa_G));
  std::vector<double> out(count);
  for (long s = 0; s < count; ++s) {
    cplx acc{};
    for (int l = 0; l < cfg.L; ++l) {
      const double eh = std::abs(ch_los + ch_sc * rng.cgaussian(1.0));
      const double eg = std::abs(cg_los + cg_sc * rng.cgaussian(1.0));
      acc += eh * eg * std::polar(1.0, rng.uniform(-wmax, wmax));
    }
    out[s] = std::abs(acc);
  }
  return out;
}

}  // namespace lris
