// SPDX-License-Identifier: Apache-2.0
#include "lris/phasedesign.hpp"

#include <cmath>
#include <stdexcept>

#include "lris/detection.hpp"

namespace lris {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kFlatNumerator = 1e-300;

double wrap_angle(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a - kPi;
}

double circular_distance(double a, double b) {
  const double d = std::fabs(wrap_angle(a - b));
  return d;
}

std::vector<cplx> column(const CMatrix& m, std::size_t j) {
  std::vector<cplx> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) out[i] = m(i, j);
  return out;
}

// g_l with g_l^H = [G]_{l,:}, i.e. g_l[j] = conj(G(l, j)).
std::vector<cplx> row_hermitian(const CMatrix& m, std::size_t i) {
  std::vector<cplx> out(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) out[j] = std::conj(m(i, j));
  return out;
}

double norm2(const std::vector<cplx>& v) {
  double s = 0.0;
  for (const cplx& x : v) s += std::norm(x);
  return s;
}

CMatrix gram(const CMatrix& h) { return hermitian(h) * h; }

// a += s * u v^H
void add_outer(CMatrix& a, cplx s, const std::vector<cplx>& u,
               const std::vector<cplx>& v) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    const cplx su = s * u[i];
    for (std::size_t j = 0; j < v.size(); ++j) a(i, j) += su * std::conj(v[j]);
  }
}

std::vector<cplx> matvec_herm(const CMatrix& m, const std::vector<cplx>& x) {
  // m^H x
  std::vector<cplx> out(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    cplx s{};
    for (std::size_t i = 0; i < m.rows(); ++i) s += std::conj(m(i, j)) * x[i];
    out[j] = s;
  }
  return out;
}

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  // a^H b
  cplx s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

}  // namespace

PhaseSet PhaseSet::with_bits(int q) {
  if (q < 1) throw std::invalid_argument("PhaseSet: q must be >= 1");
  PhaseSet s;
  s.q = q;
  const std::size_t n = std::size_t{1} << std::min(q, 30);
  s.values.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    s.values[k] = -kPi + 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
  return s;
}

double quantize_phase(double phi, const PhaseSet& set) {
  double best = set.values.front();
  double best_d = circular_distance(phi, best);
  for (std::size_t k = 1; k < set.values.size(); ++k) {
    const double d = circular_distance(phi, set.values[k]);
    if (d < best_d) {
      best_d = d;
      best = set.values[k];
    }
  }
  return best;
}

double optimal_phase_instant(std::size_t i, const ChannelRealization& real,
                             bool cascaded_only) {
  const std::size_t l = real.H.cols();
  if (i >= l) throw std::invalid_argument("optimal_phase_instant: bad index");
  ChannelRealization minus = real;
  minus.phases[i] = 0.0;
  CMatrix h_minus = assemble_total(minus);
  const auto h_i = column(real.H, i);
  const auto g_i = row_hermitian(real.G, i);
  // remove element i entirely: H_-i = H_tot(phi_i = 0) - h_i g_i^H
  add_outer(h_minus, cplx{-1.0, 0.0}, h_i, g_i);

  CMatrix a = gram(h_minus);
  add_outer(a, norm2(h_i), g_i, g_i);
  const auto q_vec = matvec_herm(h_minus, h_i);

  cplx val;
  if (!cascaded_only) {
    const CMatrix ainv = inverse(a);
    std::vector<cplx> t(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
      cplx s{};
      for (std::size_t c2 = 0; c2 < a.cols(); ++c2) s += ainv(r, c2) * q_vec[c2];
      t[r] = s;
    }
    val = inner(g_i, t);
  } else {
    // Tr[H_-i^H (h_i g_i^H) A_i^-1] with A_i from the cascaded product only.
    CMatrix cascade(real.H.rows(), real.G.cols());
    add_outer(cascade, 1.0, h_i, g_i);
    const CMatrix b = hermitian(h_minus) * cascade;
    const CMatrix ainv = inverse(a);
    const CMatrix t = b * ainv;
    val = 0.0;
    for (std::size_t r = 0; r < t.rows(); ++r) val += t(r, r);
  }
  if (std::abs(val) < kFlatNumerator) return real.phases[i];
  return wrap_angle(-std::arg(val));
}

PhaseDesignResult algorithm1(ChannelRealization& real, const SystemConfig& cfg,
                             double eps, int max_sweeps) {
  if (!(eps > 0.0)) throw std::invalid_argument("algorithm1: eps must be > 0");
  const std::size_t l = real.H.cols();
  const PhaseSet set = PhaseSet::with_bits(cfg.q);

  std::vector<std::vector<cplx>> h_cols(l), g_rows(l);
  std::vector<double> h_norm2(l);
  for (std::size_t k = 0; k < l; ++k) {
    h_cols[k] = column(real.H, k);
    g_rows[k] = row_hermitian(real.G, k);
    h_norm2[k] = norm2(h_cols[k]);
  }

  PhaseDesignResult res;
  res.phases = real.phases;
  res.min_snr_trace.push_back(zf_snrs(real.H_tot, cfg.p).min_value);
  std::vector<double> best_phases = real.phases;

  CMatrix t_gram = gram(real.H_tot);
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (std::size_t i = 0; i < l; ++i) {
      const auto& h = h_cols[i];
      const auto& g = g_rows[i];
      const double hn = h_norm2[i];
      const cplx e_old = std::polar(1.0, real.phases[i]);
      const auto w = matvec_herm(real.H_tot, h);

      // q_i = H_-i^H h_i and A_i = H_-i^H H_-i + ||h||^2 g g^H via rank-one
      // downdates of the running Gram.
      std::vector<cplx> q_vec(w.size());
      for (std::size_t j = 0; j < w.size(); ++j)
        q_vec[j] = w[j] - std::conj(e_old) * hn * g[j];
      CMatrix a = t_gram;
      add_outer(a, -std::conj(e_old), g, w);
      add_outer(a, -e_old, w, g);
      add_outer(a, 2.0 * hn, g, g);

      const CMatrix low = cholesky(a);
      const auto x = cholesky_solve(low, q_vec);
      const cplx val = inner(g, x);
      double phi_new = real.phases[i];
      if (std::abs(val) >= kFlatNumerator)
        phi_new = quantize_phase(wrap_angle(-std::arg(val)), set);

      const cplx e_new = std::polar(1.0, phi_new);
      // H_tot and Gram follow the committed phase incrementally.
      add_outer(real.H_tot, e_new - e_old, h, g);
      t_gram = a;
      add_outer(t_gram, std::conj(e_new), g, q_vec);
      add_outer(t_gram, e_new, q_vec, g);
      real.phases[i] = phi_new;
    }
    real.H_tot = assemble_total(real);  // shed accumulated rank-one rounding
    t_gram = gram(real.H_tot);

    const double gmin = zf_snrs(real.H_tot, cfg.p).min_value;
    const double prev = res.min_snr_trace.back();
    res.sweeps = sweep;
    if (gmin < prev) {
      set_phases(real, best_phases);  // roll back the losing sweep
      res.converged = true;
      break;
    }
    res.min_snr_trace.push_back(gmin);
    best_phases = real.phases;
    if (gmin - prev < eps * std::max(prev, 1e-30)) {
      res.converged = true;
      break;
    }
  }
  res.phases = real.phases;
  return res;
}

StatisticalContext make_statistical_context(const SystemConfig& cfg,
                                            const EquivalentScalars& sc,
                                            bool perfect_csi) {
  const auto a_lb_rx = steering_vector(cfg.rx.v, cfg.rx.h, cfg.lb_rx.theta, cfg.lb_rx.psi);
  const auto a_lb_ris = steering_vector(cfg.ris.v, cfg.ris.h, cfg.lb_ris.theta, cfg.lb_ris.psi);
  const auto a_ul_ris = steering_vector(cfg.ris.v, cfg.ris.h, cfg.ul_ris.theta, cfg.ul_ris.psi);
  const auto a_ul_tx = steering_vector(cfg.tx.v, cfg.tx.h, cfg.ul_tx.theta, cfg.ul_tx.psi);
  const CMatrix m_lb = unit_modulus_los(a_lb_rx, a_lb_ris);   // N x L
  const CMatrix m_ul = unit_modulus_los(a_ul_ris, a_ul_tx);   // L x M

  StatisticalContext ctx;
  ctx.mu_lb.resize(cfg.L);
  ctx.mu_ul.resize(cfg.L);
  for (int l = 0; l < cfg.L; ++l) {
    ctx.mu_lb[l] = column(m_lb, l);
    ctx.mu_ul[l] = row_hermitian(m_ul, l);
  }
  ctx.coeff = sc.K * cfg.beta_LB * cfg.beta_UL / (cfg.N * (sc.K + 1.0));
  ctx.delta = perfect_csi ? rho_model(cfg, sc) : delta_model(cfg, sc);
  ctx.v_noise = perfect_csi ? 1.0 : noise_variance_v(cfg, sc);
  return ctx;
}

CMatrix statistical_mean_sum(const StatisticalContext& ctx,
                             const std::vector<double>& phases) {
  const std::size_t n = ctx.mu_lb.front().size();
  const std::size_t m = ctx.mu_ul.front().size();
  CMatrix sum(n, m);
  for (std::size_t l = 0; l < ctx.mu_lb.size(); ++l)
    add_outer(sum, std::polar(1.0, phases[l]), ctx.mu_lb[l], ctx.mu_ul[l]);
  return sum;
}

CMatrix statistical_sigma_hat(const StatisticalContext& ctx,
                              const SystemConfig& cfg,
                              const std::vector<double>& phases) {
  const CMatrix x = statistical_mean_sum(ctx, phases);
  CMatrix s = gram(x);
  s *= ctx.coeff;
  for (int i = 0; i < cfg.M; ++i) s(i, i) += ctx.delta;
  return s;
}

double optimal_phase_statistical(std::size_t i, const SystemConfig& cfg,
                                 const StatisticalContext& ctx,
                                 const std::vector<double>& phases) {
  if (i >= ctx.mu_lb.size())
    throw std::invalid_argument("optimal_phase_statistical: bad index");
  CMatrix m_minus = statistical_mean_sum(ctx, phases);
  add_outer(m_minus, -std::polar(1.0, phases[i]), ctx.mu_lb[i], ctx.mu_ul[i]);

  CMatrix a = gram(m_minus);
  add_outer(a, norm2(ctx.mu_lb[i]), ctx.mu_ul[i], ctx.mu_ul[i]);
  a *= ctx.coeff;
  for (int r = 0; r < cfg.M; ++r) a(r, r) += ctx.delta;

  const auto q_vec = matvec_herm(m_minus, ctx.mu_lb[i]);
  const CMatrix low = cholesky(a);
  const auto x = cholesky_solve(low, q_vec);
  const cplx val = inner(ctx.mu_ul[i], x);
  if (std::abs(val) < kFlatNumerator) return phases[i];
  return wrap_angle(-std::arg(val));
}

namespace {

double jensen_bound(const StatisticalContext& ctx, const SystemConfig& cfg,
                    const std::vector<double>& phases) {
  const CMatrix sh = statistical_sigma_hat(ctx, cfg, phases);
  const CMatrix inv = inverse(sh);
  double max_diag = 0.0;
  for (int i = 0; i < cfg.M; ++i) max_diag = std::max(max_diag, inv(i, i).real());
  return (cfg.N - cfg.M) * (cfg.p / ctx.v_noise) / max_diag;
}

}  // namespace

PhaseDesignResult algorithm2(const SystemConfig& cfg,
                             const EquivalentScalars& sc,
                             std::vector<double> init_phases,
                             double eps, int max_sweeps, bool perfect_csi) {
  if (!(eps > 0.0)) throw std::invalid_argument("algorithm2: eps must be > 0");
  if (cfg.N <= cfg.M)
    throw std::invalid_argument("Jensen bound undefined: requires N > M");
  if (init_phases.size() != static_cast<std::size_t>(cfg.L))
    throw std::invalid_argument("algorithm2: phase vector length mismatch");

  const PhaseSet set = PhaseSet::with_bits(cfg.q);
  const StatisticalContext ctx = make_statistical_context(cfg, sc, perfect_csi);

  PhaseDesignResult res;
  res.phases = std::move(init_phases);
  res.min_snr_trace.push_back(jensen_bound(ctx, cfg, res.phases));
  std::vector<double> best = res.phases;

  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (std::size_t i = 0; i < ctx.mu_lb.size(); ++i) {
      const double cont = optimal_phase_statistical(i, cfg, ctx, res.phases);
      res.phases[i] = quantize_phase(cont, set);
    }
    const double bound = jensen_bound(ctx, cfg, res.phases);
    const double prev = res.min_snr_trace.back();
    res.sweeps = sweep;
    if (bound < prev) {
      res.phases = best;
      res.converged = true;
      break;
    }
    res.min_snr_trace.push_back(bound);
    best = res.phases;
    if (bound - prev < eps * std::max(prev, 1e-30)) {
      res.converged = true;
      break;
    }
  }
  res.phases = best;
  return res;
}

}  // namespace lris
