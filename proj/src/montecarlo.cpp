// SPDX-License-Identifier: Apache-2.0
#include "lris/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lris/channel.hpp"
#include "lris/detection.hpp"
#include "lris/estimation.hpp"
#include "lris/phasedesign.hpp"

namespace lris {

namespace {

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Immutable per-experiment context shared across trials.
struct TrialContext {
  SystemConfig cfg;
  PhaseMode mode;
  CsiMode csi;
  EquivalentScalars sc;
  bool have_sc = false;
  CMatrix mean_pattern;      // unit-modulus rank-one direction (N x M)
  CMatrix x_scaled;          // scaled mean channel for conditional mean
  double mean_amp = 0.0;     // sqrt(mean_power)
  double rho = 0.0;
  double v_noise = 1.0;
  double shrink = 0.0;
  std::vector<double> alg2_phases;
  PhaseSet set;
};

TrialContext make_context(const SystemConfig& cfg, PhaseMode mode, CsiMode csi) {
  TrialContext ctx;
  ctx.cfg = cfg;
  ctx.mode = mode;
  ctx.csi = csi;
  ctx.set = PhaseSet::with_bits(cfg.q);
  const bool needs_model = mode == PhaseMode::Mismatch ||
                           mode == PhaseMode::Algorithm2 ||
                           csi == CsiMode::Imperfect;
  if (needs_model) {
    ctx.sc = equivalent_scalars(cfg);
    ctx.have_sc = true;
    ctx.rho = rho_model(cfg, ctx.sc);
    ctx.v_noise = noise_variance_v(cfg, ctx.sc);
    ctx.shrink = shrink_factor(cfg, ctx.sc);
    ctx.x_scaled = scaled_mean_channel(cfg, ctx.sc);
    ctx.mean_amp = std::sqrt(mean_power(cfg, ctx.sc));
    CMatrix p = mean_matrix(cfg, ctx.sc);
    p *= 1.0 / std::sqrt(ctx.sc.gamma_bar);  // back to unit-modulus entries
    ctx.mean_pattern = p;
  }
  if (mode == PhaseMode::Algorithm2) {
    ctx.alg2_phases =
        algorithm2(cfg, ctx.sc, std::vector<double>(cfg.L, 0.0), 1e-4, 20,
                   csi == CsiMode::Perfect)
            .phases;
  }
  return ctx;
}

StreamSnrs trial_snrs(const TrialContext& ctx, long trial) {
  const SystemConfig& cfg = ctx.cfg;
  CounterRng rng(cfg.seed, static_cast<std::uint64_t>(trial) + 1);

  if (ctx.mode == PhaseMode::Mismatch) {
    // Composite channel straight from the equivalent statistics: rank-one
    // mean plus iid circular scatter of per-entry variance rho.
    CMatrix h_tot = ctx.mean_pattern;
    h_tot *= ctx.mean_amp;
    for (auto& v : h_tot.data()) v += rng.cgaussian(ctx.rho);
    if (ctx.csi == CsiMode::Perfect) return zf_snrs(h_tot, cfg.p, 1.0);
    const CMatrix h_hat = simulate_ls_estimate(h_tot, cfg, rng);
    const CMatrix h_bar = conditional_mean(h_hat, ctx.x_scaled, cfg, ctx.sc);
    return zf_snrs(h_bar, cfg.p, ctx.v_noise);
  }

  ChannelRealization real = draw_channels(cfg, rng);
  switch (ctx.mode) {
    case PhaseMode::Fixed:
      break;  // all-zero phases from draw_channels
    case PhaseMode::Random: {
      std::vector<double> ph(cfg.L);
      for (auto& v : ph) v = ctx.set.values[rng.next_below(ctx.set.values.size())];
      set_phases(real, std::move(ph));
      break;
    }
    case PhaseMode::Algorithm2:
      set_phases(real, ctx.alg2_phases);
      break;
    case PhaseMode::Algorithm1:
      if (ctx.csi == CsiMode::Perfect) algorithm1(real, cfg);
      break;  // imperfect-CSI design happens on the conditional mean below
    default:
      break;
  }

  if (ctx.csi == CsiMode::Perfect) return zf_snrs(real.H_tot, cfg.p, 1.0);

  if (ctx.mode == PhaseMode::Algorithm1) {
    // Design on the conditional-mean channel: shrink scales each cascaded
    // rank-one term; the direct part carries the estimation noise.
    const double s = ctx.shrink;
    CMatrix err(cfg.N, cfg.M);
    for (auto& v : err.data()) v = rng.cgaussian(1.0 / (cfg.M * cfg.p));
    ChannelRealization surro;
    surro.H_D = ctx.x_scaled;
    surro.H_D *= (1.0 - s);
    CMatrix direct = real.H_D + err;
    direct *= s;
    surro.H_D += direct;
    surro.H = real.H;
    surro.H *= s;
    surro.G = real.G;
    surro.phases = real.phases;
    surro.H_tot = assemble_total(surro);
    algorithm1(surro, cfg);
    return zf_snrs(surro.H_tot, cfg.p, ctx.v_noise);
  }

  const CMatrix h_hat = simulate_ls_estimate(real.H_tot, cfg, rng);
  const CMatrix h_bar = conditional_mean(h_hat, ctx.x_scaled, cfg, ctx.sc);
  return zf_snrs(h_bar, cfg.p, ctx.v_noise);
}

}  // namespace

std::vector<double> parallel_trials(long trials, int workers,
                                    const std::function<double(long)>& fn) {
  if (trials < 0) throw std::invalid_argument("parallel_trials: trials < 0");
  std::vector<double> out(static_cast<std::size_t>(trials));
  const int nw = resolve_workers(workers);
  if (nw <= 1 || trials < 128) {
    for (long t = 0; t < trials; ++t) out[t] = fn(t);
    return out;
  }
  constexpr long kChunk = 256;
  std::atomic<long> next{0};
  auto worker = [&]() {
    for (;;) {
      const long begin = next.fetch_add(kChunk);
      if (begin >= trials) break;
      const long end = std::min(begin + kChunk, trials);
      for (long t = begin; t < end; ++t) out[t] = fn(t);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

std::vector<double> sample_stream_snrs(const SystemConfig& cfg, PhaseMode mode,
                                       CsiMode csi, long trials, int workers,
                                       SnrStat stat) {
  cfg.validate();
  const TrialContext ctx = make_context(cfg, mode, csi);
  return parallel_trials(trials, workers, [&](long t) {
    const StreamSnrs s = trial_snrs(ctx, t);
    return stat == SnrStat::Stream0 ? s.values[0] : s.min_value;
  });
}

EmpiricalCurve empirical_outage(const SystemConfig& cfg, PhaseMode mode,
                                CsiMode csi, const std::vector<double>& grid,
                                long trials, int workers, SnrStat stat) {
  if (trials < 100)
    throw std::invalid_argument("empirical_outage: need trials >= 100");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("empirical_outage: grid must be strictly increasing");

  std::vector<double> snr = sample_stream_snrs(cfg, mode, csi, trials, workers, stat);
  std::sort(snr.begin(), snr.end());

  EmpiricalCurve curve;
  curve.grid = grid;
  curve.trials = trials;
  curve.seed = cfg.seed;
  const double n = static_cast<double>(trials);
  for (double x : grid) {
    const auto it = std::upper_bound(snr.begin(), snr.end(), x);
    const double p_hat = static_cast<double>(it - snr.begin()) / n;
    curve.values.push_back(p_hat);
    curve.ci_half.push_back(1.959963985 * std::sqrt(p_hat * (1.0 - p_hat) / n));
  }
  return curve;
}

MeanCi empirical_avg_se(const SystemConfig& cfg, PhaseMode mode, CsiMode csi,
                        long trials, int workers) {
  if (trials < 100)
    throw std::invalid_argument("empirical_avg_se: need trials >= 100");
  const TrialContext ctx = make_context(cfg, mode, csi);
  const std::vector<double> per_trial =
      parallel_trials(trials, workers, [&](long t) {
        const StreamSnrs s = trial_snrs(ctx, t);
        double acc = 0.0;
        for (double g : s.values) acc += std::log2(1.0 + g);
        return acc / static_cast<double>(s.values.size());
      });
  double mean = 0.0;
  for (double v : per_trial) mean += v;
  mean /= static_cast<double>(trials);
  double var = 0.0;
  for (double v : per_trial) var += (v - mean) * (v - mean);
  var /= static_cast<double>(trials - 1);
  MeanCi out;
  out.mean = mean;
  out.ci_half = 1.959963985 * std::sqrt(var / static_cast<double>(trials));
  out.trials = trials;
  out.seed = cfg.seed;
  return out;
}

namespace {

double fit_slope(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w) {
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
    sxx += w[i] * x[i] * x[i];
    sxy += w[i] * x[i] * y[i];
  }
  const double denom = sxx - sx * sx / sw;
  return (sxy - sx * sy / sw) / denom;
}

}  // namespace

double diversity_slope(const SystemConfig& cfg,
                       const std::vector<double>& p_grid_db, long trials,
                       int workers) {
  if (p_grid_db.size() < 2)
    throw std::invalid_argument("diversity_slope: need at least 2 grid points");
  const double span = p_grid_db.back() - p_grid_db.front();

  if (trials == 0) {
    if (span < 20.0)
      throw std::invalid_argument(
          "diversity_slope: analytic fit needs a p grid spanning >= 20 dB in "
          "the high-SNR region");
    const EquivalentScalars sc = equivalent_scalars(cfg);
    const double sid = sigma_inv_diag(cfg, sc);
    std::vector<double> lx, ly, w;
    for (double pdb : p_grid_db) {
      const double p = db_to_linear(pdb);
      const double f = outage_cdf(cfg.gamma_th, p, sid, cfg.N, cfg.M, 1.0);
      lx.push_back(std::log10(p));
      ly.push_back(std::log10(f));
      w.push_back(1.0);
    }
    return fit_slope(lx, ly, w);
  }

  if (span < 3.0)
    throw std::invalid_argument("diversity_slope: Monte Carlo fit needs >= 3 dB span");
  // One sample set covers every p point: gamma = p * (gamma at p = 1).
  SystemConfig unit = cfg;
  unit.p = 1.0;
  const TrialContext ctx = make_context(unit, PhaseMode::Random, CsiMode::Perfect);
  std::vector<double> g(static_cast<std::size_t>(trials) * cfg.M);
  {
    const int nw = resolve_workers(workers);
    constexpr long kChunk = 128;
    std::atomic<long> next{0};
    auto worker = [&]() {
      for (;;) {
        const long begin = next.fetch_add(kChunk);
        if (begin >= trials) break;
        const long end = std::min(begin + kChunk, trials);
        for (long t = begin; t < end; ++t) {
          const StreamSnrs s = trial_snrs(ctx, t);
          for (int i = 0; i < cfg.M; ++i)
            g[static_cast<std::size_t>(t) * cfg.M + i] = s.values[i];
        }
      }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::sort(g.begin(), g.end());
  const double n = static_cast<double>(g.size());
  std::vector<double> lx, ly, w;
  for (double pdb : p_grid_db) {
    const double p = db_to_linear(pdb);
    const double thresh = cfg.gamma_th / p;
    const auto it = std::upper_bound(g.begin(), g.end(), thresh);
    const long count = it - g.begin();
    if (count < 25)
      throw std::runtime_error(
          "starved estimate: only " + std::to_string(count) +
          " outage events at p = " + std::to_string(pdb) +
          " dB; increase trials or lower the p grid");
    lx.push_back(std::log10(p));
    ly.push_back(std::log10(static_cast<double>(count) / n));
    w.push_back(static_cast<double>(count));
  }
  return fit_slope(lx, ly, w);
}

double ks_distance(const std::vector<double>& sorted_samples,
                   const std::function<double(double)>& cdf) {
  const double n = static_cast<double>(sorted_samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
    const double f = cdf(sorted_samples[i]);
    d = std::max(d, std::fabs((i + 1.0) / n - f));
    d = std::max(d, std::fabs(static_cast<double>(i) / n - f));
  }
  return d;
}

}  // namespace lris
