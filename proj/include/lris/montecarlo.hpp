// SPDX-License-Identifier: Apache-2.0
#ifndef LRIS_MONTECARLO_HPP
#define LRIS_MONTECARLO_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "lris/config.hpp"
#include "lris/stats.hpp"

namespace lris {

/// How the surface phases are set per trial.
///  - Algorithm1: instantaneous coordinate-descent design per realization.
///  - Algorithm2: statistical design computed once, reused for all trials.
///  - Random: each phase uniform over the discrete set.
///  - Fixed: all phases zero.
///  - Mismatch: the composite channel is drawn from the equivalent
///    quantization-mismatch statistics (rank-one mean plus circular
///    scatter from m, gamma_bar, K) instead of assembling H Phi G.
enum class PhaseMode { Algorithm1, Algorithm2, Random, Fixed, Mismatch };

enum class CsiMode { Perfect, Imperfect };

/// Which per-trial SNR statistic a curve tracks.
enum class SnrStat { Stream0, MinStream };

struct EmpiricalCurve {
  std::vector<double> grid;     // strictly increasing thresholds
  std::vector<double> values;   // outage estimates in [0, 1]
  std::vector<double> ci_half;  // 95% half-widths
  long trials = 0;
  std::uint64_t seed = 0;
};

struct MeanCi {
  double mean = 0.0;
  double ci_half = 0.0;  // 95%
  long trials = 0;
  std::uint64_t seed = 0;
};

/// Per-trial SNR samples in trial order. Deterministic for a given seed
/// regardless of `workers` (trial-indexed RNG streams, chunked reduce).
std::vector<double> sample_stream_snrs(const SystemConfig& cfg, PhaseMode mode,
                                       CsiMode csi, long trials, int workers,
                                       SnrStat stat = SnrStat::Stream0);

/// Empirical outage curve over the threshold grid with binomial 95% CIs.
EmpiricalCurve empirical_outage(const SystemConfig& cfg, PhaseMode mode,
                                CsiMode csi, const std::vector<double>& grid,
                                long trials, int workers,
                                SnrStat stat = SnrStat::Stream0);

/// Mean spectral efficiency log2(1 + gamma_i) across trials and streams.
MeanCi empirical_avg_se(const SystemConfig& cfg, PhaseMode mode, CsiMode csi,
                        long trials, int workers);

/// Least-squares slope of log10(outage at gamma_th) versus log10(p) over
/// the given grid (dB). With trials == 0 the exact CDF is evaluated
/// (grid must span >= 20 dB); otherwise a Monte Carlo fit over the
/// physical channel with random phases (count-weighted), which throws
/// "starved estimate" if any grid point sees fewer than 25 outage events.
double diversity_slope(const SystemConfig& cfg,
                       const std::vector<double>& p_grid_db, long trials,
                       int workers);

/// Kolmogorov-Smirnov distance between sorted samples and a CDF.
double ks_distance(const std::vector<double>& sorted_samples,
                   const std::function<double(double)>& cdf);

/// Runs fn(t) for t in [0, trials) on `workers` threads, storing results
/// by trial index. Worker count never changes the output.
std::vector<double> parallel_trials(long trials, int workers,
                                    const std::function<double(long)>& fn);

}  // namespace lris

#endif  // LRIS_MONTECARLO_HPP
