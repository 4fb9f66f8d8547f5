// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end for the LRIS-assisted MIMO uplink simulator.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lris/channel.hpp"
#include "lris/experiment.hpp"
#include "lris/phasedesign.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path = "-";
  std::string format = "csv";
  std::string specs_dir;
  long seed = -1;
  int workers = 0;
  long trials = -1;
  std::vector<std::string> overrides;  // key=value pairs from flags
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "key = value config file");
  cmd->add_option("--out", opts.out_path, "output path ('-' for stdout)");
  cmd->add_option("--format", opts.format, "csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", opts.seed, "master RNG seed");
  cmd->add_option("--workers", opts.workers,
                  "worker threads (default $LRIS_WORKERS or hardware)");
  cmd->add_option("--trials", opts.trials, "Monte Carlo trials");
  cmd->add_option("--set", opts.overrides,
                  "extra key=value override (repeatable)");
}

void add_param_flags(CLI::App* cmd, CommonOpts& opts) {
  auto push = [&opts](const std::string& key) {
    return [&opts, key](const std::string& v) { opts.overrides.push_back(key + "=" + v); };
  };
  cmd->add_option_function<std::string>("--p-db", push("p_dB"), "transmit SNR in dB");
  cmd->add_option_function<std::string>("--m", push("M"), "transmit antennas");
  cmd->add_option_function<std::string>("--n", push("N"), "receive antennas");
  cmd->add_option_function<std::string>("--l", push("L"), "surface elements");
  cmd->add_option_function<std::string>("--q", push("q"), "phase bits");
  cmd->add_option_function<std::string>("--kappa-db", push("kappa_dB"), "Rician factor in dB");
  cmd->add_option_function<std::string>("--ct", push("CT"), "coherence time in samples");
  cmd->add_option_function<std::string>("--gamma-th", push("gamma_th_linear"), "outage threshold (linear)");
  cmd->add_option_function<std::string>("--sweep", push("sweep_param"), "swept parameter");
  cmd->add_option_function<std::string>("--values", push("sweep_values"), "comma list of sweep values");
  cmd->add_option_function<std::string>("--grid", push("grid"), "comma list of CDF thresholds");
  cmd->add_option_function<std::string>("--phase-mode", push("phase_mode"),
                                        "algorithm1|algorithm2|random|fixed|mismatch");
  cmd->add_option_function<std::string>("--csi", push("csi_mode"), "perfect|imperfect");
  cmd->add_option_function<std::string>("--outputs", push("outputs"), "comma list of output kinds");
}

int resolve_workers_opt(const CommonOpts& opts) {
  if (opts.workers > 0) return opts.workers;
  if (const char* env = std::getenv("LRIS_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return 0;  // library default: hardware concurrency
}

std::map<std::string, std::string> collect_kv(const CommonOpts& opts,
                                              const std::string& defaults) {
  auto kv = lris::parse_key_values(defaults);
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) throw std::runtime_error("cannot read config file: " + opts.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    for (auto& [k, v] : lris::parse_key_values(ss.str())) kv[k] = v;
  }
  for (const auto& o : opts.overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("override must be key=value: " + o);
    kv[o.substr(0, eq)] = o.substr(eq + 1);
  }
  if (opts.seed >= 0) kv["seed"] = std::to_string(opts.seed);
  if (opts.trials >= 0) kv["trials"] = std::to_string(opts.trials);
  return kv;
}

void write_payload(const CommonOpts& opts, const lris::ExperimentReport& rep) {
  if (opts.out_path == "-") {
    if (opts.format == "csv")
      std::cout << lris::emit_csv(rep);
    else
      std::cout << lris::report_to_json(rep).dump(2) << "\n";
    return;
  }
  lris::emit_report_file(rep, opts.format, opts.out_path);
  std::cerr << "wrote " << opts.format << " report to " << opts.out_path << "\n";
}

int run_from_kv(const CommonOpts& opts, const std::map<std::string, std::string>& kv) {
  const lris::ExperimentSpec spec = lris::ExperimentSpec::from_key_values(kv);
  const lris::ExperimentReport rep = lris::run_experiment(spec, resolve_workers_opt(opts));
  write_payload(opts, rep);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Link-level simulator for LRIS-assisted zero-forcing MIMO uplink"};
  app.require_subcommand(1);

  CommonOpts outage_opts, se_opts, eff_opts, pd_opts, run_opts;
  std::string run_name;
  std::string pd_mode = "algorithm1";
  std::string fault;

  CLI::App* c_outage = app.add_subcommand("outage", "outage probability at the configured threshold");
  add_common(c_outage, outage_opts);
  add_param_flags(c_outage, outage_opts);

  CLI::App* c_se = app.add_subcommand("se", "average spectral efficiency per stream");
  add_common(c_se, se_opts);
  add_param_flags(c_se, se_opts);

  CLI::App* c_eff = app.add_subcommand("effective-se", "pilot-overhead discounted spectral efficiency");
  add_common(c_eff, eff_opts);
  add_param_flags(c_eff, eff_opts);

  CLI::App* c_pd = app.add_subcommand("phase-design", "run a phase-shift design and emit phases + trace");
  add_common(c_pd, pd_opts);
  add_param_flags(c_pd, pd_opts);
  c_pd->add_option("--mode", pd_mode, "algorithm1|algorithm2")
      ->check(CLI::IsMember({"algorithm1", "algorithm2"}));

  CLI::App* c_val = app.add_subcommand("validate", "fast invariant self-checks");
  c_val->add_option("--inject-fault", fault, "perturb an internal constant (testing)")
      ->check(CLI::IsMember({"xi1"}));

  CLI::App* c_run = app.add_subcommand("run", "run a named experiment spec file");
  add_common(c_run, run_opts);
  add_param_flags(c_run, run_opts);
  c_run->add_option("name", run_name, "spec name (specs/<name>.cfg) or path")->required();
  c_run->add_option("--specs-dir", run_opts.specs_dir, "directory of spec files");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_val->parsed()) {
      const lris::FaultInjection fi = fault == "xi1" ? lris::FaultInjection::Xi1
                                                     : lris::FaultInjection::None;
      const bool ok = lris::run_validation(std::cout, fi);
      return ok ? 0 : 1;
    }
    if (c_outage->parsed())
      return run_from_kv(outage_opts,
                         collect_kv(outage_opts,
                                    "name = outage\n"
                                    "outputs = analytic_cdf,asymptotic_cdf,empirical_cdf\n"));
    if (c_se->parsed())
      return run_from_kv(se_opts, collect_kv(se_opts,
                                             "name = se\n"
                                             "outputs = avg_se,empirical_se\n"));
    if (c_eff->parsed())
      return run_from_kv(eff_opts,
                         collect_kv(eff_opts,
                                    "name = effective-se\n"
                                    "outputs = effective_se,effective_se_direct\n"));
    if (c_pd->parsed()) {
      auto kv = collect_kv(pd_opts, "name = phase-design\noutputs = analytic_cdf\n");
      lris::ExperimentSpec spec = lris::ExperimentSpec::from_key_values(kv);
      lris::resolve_angles(spec);
      lris::SystemConfig cfg = spec.base;
      lris::apply_sweep_value(cfg, spec.sweep_param, spec.sweep_values.front());
      cfg.validate();
      lris::CounterRng rng(cfg.seed, 1);
      const lris::EquivalentScalars sc = lris::equivalent_scalars(cfg);
      lris::PhaseDesignResult res;
      if (pd_mode == "algorithm1") {
        lris::ChannelRealization real = lris::draw_channels(cfg, rng);
        res = lris::algorithm1(real, cfg);
      } else {
        res = lris::algorithm2(cfg, sc, std::vector<double>(cfg.L, 0.0), 1e-4, 20,
                               spec.csi_mode == lris::CsiMode::Perfect);
      }
      lris::ExperimentReport rep;
      rep.spec_text = spec.canonical_text();
      rep.spec_hash = spec.hash();
      rep.tool_version = lris::kToolVersion;
      rep.seed = cfg.seed;
      rep.sweep_param = "index";
      rep.resolved_angles = {cfg.lb_rx.theta,  cfg.lb_rx.psi,  cfg.lb_ris.theta,
                             cfg.lb_ris.psi,   cfg.ul_ris.theta, cfg.ul_ris.psi,
                             cfg.ul_tx.theta,  cfg.ul_tx.psi};
      for (std::size_t i = 0; i < res.phases.size(); ++i) {
        lris::SweepPointRecord pt;
        pt.sweep_value = static_cast<double>(i);
        lris::OutputRecord rec;
        rec.kind = "phase";
        rec.value = res.phases[i];
        rec.seed = cfg.seed;
        pt.outputs.push_back(rec);
        rep.points.push_back(std::move(pt));
      }
      for (std::size_t sweep = 0; sweep < res.min_snr_trace.size(); ++sweep) {
        lris::SweepPointRecord pt;
        pt.sweep_value = static_cast<double>(sweep);
        lris::OutputRecord rec;
        rec.kind = pd_mode == "algorithm1" ? "min_snr_trace" : "jensen_bound_trace";
        rec.value = res.min_snr_trace[sweep];
        rec.seed = cfg.seed;
        pt.outputs.push_back(rec);
        rep.points.push_back(std::move(pt));
      }
      write_payload(pd_opts, rep);
      return 0;
    }
    if (c_run->parsed()) {
      std::string path = run_name;
      if (!std::ifstream(path).good())
        path = lris::find_spec_file(run_name, run_opts.specs_dir);
      CommonOpts opts = run_opts;
      opts.config_path = path;
      return run_from_kv(opts, collect_kv(opts, ""));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
