// SPDX-License-Identifier: Apache-2.0
#include "lris/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lris/cmatrix.hpp"
#include "lris/estimation.hpp"
#include "lris/rng.hpp"

namespace lris {

const char* const kToolVersion = "lris-sim 1.0.0";

namespace {

constexpr std::uint64_t kAngleStream = 0xA11C0DEULL;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    while (pos < v.size() && std::isspace(static_cast<unsigned char>(v[pos]))) ++pos;
    if (pos != v.size()) throw std::invalid_argument("trailing junk");
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("key '" + key + "': cannot parse number '" + v + "'");
  }
}

long parse_long(const std::string& key, const std::string& v) {
  const double d = parse_double(key, v);
  if (d != std::floor(d))
    throw std::invalid_argument("key '" + key + "': expected integer, got '" + v + "'");
  return static_cast<long>(d);
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_double(key, tok));
  }
  return out;
}

std::vector<std::string> parse_str_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto b = tok.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = tok.find_last_not_of(" \t");
    out.push_back(tok.substr(b, e - b + 1));
  }
  return out;
}

const std::set<std::string> kKnownOutputs = {
    "analytic_cdf", "asymptotic_cdf", "empirical_cdf",
    "avg_se",       "empirical_se",   "effective_se",
    "effective_se_direct"};

PhaseMode phase_mode_from(const std::string& s) {
  if (s == "algorithm1") return PhaseMode::Algorithm1;
  if (s == "algorithm2") return PhaseMode::Algorithm2;
  if (s == "random") return PhaseMode::Random;
  if (s == "fixed") return PhaseMode::Fixed;
  if (s == "mismatch") return PhaseMode::Mismatch;
  throw std::invalid_argument("unknown phase_mode '" + s + "'");
}

std::string phase_mode_str(PhaseMode m) {
  switch (m) {
    case PhaseMode::Algorithm1: return "algorithm1";
    case PhaseMode::Algorithm2: return "algorithm2";
    case PhaseMode::Random: return "random";
    case PhaseMode::Fixed: return "fixed";
    case PhaseMode::Mismatch: return "mismatch";
  }
  return "?";
}

CsiMode csi_mode_from(const std::string& s) {
  if (s == "perfect") return CsiMode::Perfect;
  if (s == "imperfect") return CsiMode::Imperfect;
  throw std::invalid_argument("unknown csi_mode '" + s + "'");
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto be = line.find_first_not_of(" \t\r");
    if (be == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    kv[key] = val;
  }
  return kv;
}

ExperimentSpec ExperimentSpec::from_key_values(
    const std::map<std::string, std::string>& kv) {
  ExperimentSpec s;
  std::vector<std::string> errors;
  bool tx_upa_given = false, rx_upa_given = false, ris_upa_given = false;
  int angle_keys = 0;

  auto get = [&](const std::string& k) -> const std::string* {
    const auto it = kv.find(k);
    return it == kv.end() ? nullptr : &it->second;
  };

  for (const auto& [k, v] : kv) {
    try {
      if (k == "name") s.name = v;
      else if (k == "M") s.base.M = static_cast<int>(parse_long(k, v));
      else if (k == "N") s.base.N = static_cast<int>(parse_long(k, v));
      else if (k == "L") s.base.L = static_cast<int>(parse_long(k, v));
      else if (k == "q") s.base.q = static_cast<int>(parse_long(k, v));
      else if (k == "p_dB") s.base.p = db_to_linear(parse_double(k, v));
      else if (k == "beta_UB_linear") s.base.beta_UB = parse_double(k, v);
      else if (k == "beta_LB_linear") s.base.beta_LB = parse_double(k, v);
      else if (k == "beta_UL_linear") s.base.beta_UL = parse_double(k, v);
      else if (k == "kappa_dB") {
        s.base.kappa_H = s.base.kappa_G = db_to_linear(parse_double(k, v));
      } else if (k == "kappa_H_dB") s.base.kappa_H = db_to_linear(parse_double(k, v));
      else if (k == "kappa_G_dB") s.base.kappa_G = db_to_linear(parse_double(k, v));
      else if (k == "CT") s.base.coherence_time = parse_double(k, v);
      else if (k == "gamma_th_linear") s.base.gamma_th = parse_double(k, v);
      else if (k == "seed") s.base.seed = static_cast<std::uint64_t>(parse_long(k, v));
      else if (k == "tx_upa_v") { s.base.tx.v = static_cast<int>(parse_long(k, v)); tx_upa_given = true; }
      else if (k == "tx_upa_h") { s.base.tx.h = static_cast<int>(parse_long(k, v)); tx_upa_given = true; }
      else if (k == "rx_upa_v") { s.base.rx.v = static_cast<int>(parse_long(k, v)); rx_upa_given = true; }
      else if (k == "rx_upa_h") { s.base.rx.h = static_cast<int>(parse_long(k, v)); rx_upa_given = true; }
      else if (k == "ris_upa_v") { s.base.ris.v = static_cast<int>(parse_long(k, v)); ris_upa_given = true; }
      else if (k == "ris_upa_h") { s.base.ris.h = static_cast<int>(parse_long(k, v)); ris_upa_given = true; }
      else if (k == "angle_lb_rx_theta_rad") { s.base.lb_rx.theta = parse_double(k, v); ++angle_keys; }
      else if (k == "angle_lb_rx_psi_rad") { s.base.lb_rx.psi = parse_double(k, v); ++angle_keys; }
      else if (k == "angle_lb_ris_theta_rad") { s.base.lb_ris.theta = parse_double(k, v); ++angle_keys; }
      else if (k == "angle_lb_ris_psi_rad") { s.base.lb_ris.psi = parse_double(k, v); ++angle_keys; }
      else if (k == "angle_ul_ris_theta_rad") { s.base.ul_ris.theta = parse_double(k, v); ++angle_keys; }
      else if (k == "angle_ul_ris_psi_rad") { s.base.ul_ris.psi = parse_double(k, v); ++angle_keys; }
      else if (k == "angle_ul_tx_theta_rad") { s.base.ul_tx.theta = parse_double(k, v); ++angle_keys; }
      else if (k == "angle_ul_tx_psi_rad") { s.base.ul_tx.psi = parse_double(k, v); ++angle_keys; }
      else if (k == "sweep_param") s.sweep_param = v;
      else if (k == "sweep_values") s.sweep_values = parse_list(k, v);
      else if (k == "phase_mode") s.phase_mode = phase_mode_from(v);
      else if (k == "csi_mode") s.csi_mode = csi_mode_from(v);
      else if (k == "outputs") s.outputs = parse_str_list(v);
      else if (k == "trials") s.trials = parse_long(k, v);
      else if (k == "grid") s.grid = parse_list(k, v);
      else errors.push_back("unknown key '" + k + "'");
    } catch (const std::exception& e) {
      errors.push_back(e.what());
    }
  }
  (void)get;

  if (angle_keys > 0 && angle_keys != 8)
    errors.push_back("angles must be given all-or-none (8 angle_*_rad keys)");
  s.angles_explicit = angle_keys == 8;

  if (!tx_upa_given) s.base.tx = upa_for_count(s.base.M);
  if (!rx_upa_given) s.base.rx = upa_for_count(s.base.N);
  if (!ris_upa_given) s.base.ris = upa_for_count(s.base.L);

  const auto more = s.violations();
  errors.insert(errors.end(), more.begin(), more.end());
  if (!errors.empty()) {
    std::string msg = "invalid experiment spec:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw std::invalid_argument(msg);
  }
  return s;
}

std::vector<std::string> ExperimentSpec::violations() const {
  std::vector<std::string> errors = base.violations();
  static const std::set<std::string> sweepable = {"p_dB", "L", "q", "kappa_dB", "CT"};
  if (sweepable.count(sweep_param) == 0)
    errors.push_back("sweep_param '" + sweep_param + "' not one of p_dB|L|q|kappa_dB|CT");
  if (sweep_values.empty()) errors.push_back("sweep_values must be nonempty");
  for (std::size_t i = 1; i < sweep_values.size(); ++i)
    if (!(sweep_values[i] > sweep_values[i - 1]))
      errors.push_back("sweep_values must be sorted strictly increasing");
  for (const auto& o : outputs)
    if (kKnownOutputs.count(o) == 0) errors.push_back("unknown output kind '" + o + "'");
  if (outputs.empty()) errors.push_back("outputs must be nonempty");
  if (trials < 100) errors.push_back("trials must be >= 100");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      errors.push_back("grid must be sorted strictly increasing");
  return errors;
}

void ExperimentSpec::validate() const {
  const auto v = violations();
  if (v.empty()) return;
  std::string msg = "invalid experiment spec:";
  for (const auto& s : v) msg += "\n  - " + s;
  throw std::invalid_argument(msg);
}

std::string ExperimentSpec::canonical_text() const {
  std::ostringstream os;
  os << "name = " << name << "\n";
  os << "M = " << base.M << "\nN = " << base.N << "\nL = " << base.L
     << "\nq = " << base.q << "\n";
  os << "p_dB = " << fmt_double(linear_to_db(base.p)) << "\n";
  os << "beta_UB_linear = " << fmt_double(base.beta_UB) << "\n";
  os << "beta_LB_linear = " << fmt_double(base.beta_LB) << "\n";
  os << "beta_UL_linear = " << fmt_double(base.beta_UL) << "\n";
  os << "kappa_H_dB = " << fmt_double(linear_to_db(base.kappa_H)) << "\n";
  os << "kappa_G_dB = " << fmt_double(linear_to_db(base.kappa_G)) << "\n";
  os << "CT = " << fmt_double(base.coherence_time) << "\n";
  os << "gamma_th_linear = " << fmt_double(base.gamma_th) << "\n";
  os << "seed = " << base.seed << "\n";
  os << "tx_upa_v = " << base.tx.v << "\ntx_upa_h = " << base.tx.h << "\n";
  os << "rx_upa_v = " << base.rx.v << "\nrx_upa_h = " << base.rx.h << "\n";
  os << "ris_upa_v = " << base.ris.v << "\nris_upa_h = " << base.ris.h << "\n";
  if (angles_explicit) {
    os << "angle_lb_rx_theta_rad = " << fmt_double(base.lb_rx.theta) << "\n";
    os << "angle_lb_rx_psi_rad = " << fmt_double(base.lb_rx.psi) << "\n";
    os << "angle_lb_ris_theta_rad = " << fmt_double(base.lb_ris.theta) << "\n";
    os << "angle_lb_ris_psi_rad = " << fmt_double(base.lb_ris.psi) << "\n";
    os << "angle_ul_ris_theta_rad = " << fmt_double(base.ul_ris.theta) << "\n";
    os << "angle_ul_ris_psi_rad = " << fmt_double(base.ul_ris.psi) << "\n";
    os << "angle_ul_tx_theta_rad = " << fmt_double(base.ul_tx.theta) << "\n";
    os << "angle_ul_tx_psi_rad = " << fmt_double(base.ul_tx.psi) << "\n";
  }
  os << "sweep_param = " << sweep_param << "\n";
  os << "sweep_values =";
  for (std::size_t i = 0; i < sweep_values.size(); ++i)
    os << (i ? "," : " ") << fmt_double(sweep_values[i]);
  os << "\n";
  os << "phase_mode = " << phase_mode_str(phase_mode) << "\n";
  os << "csi_mode = " << (csi_mode == CsiMode::Perfect ? "perfect" : "imperfect")
     << "\n";
  os << "outputs =";
  for (std::size_t i = 0; i < outputs.size(); ++i) os << (i ? "," : " ") << outputs[i];
  os << "\n";
  os << "trials = " << trials << "\n";
  if (!grid.empty()) {
    os << "grid =";
    for (std::size_t i = 0; i < grid.size(); ++i) os << (i ? "," : " ") << fmt_double(grid[i]);
    os << "\n";
  }
  return os.str();
}

std::string ExperimentSpec::hash() const {
  const std::string text = canonical_text();
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void apply_sweep_value(SystemConfig& cfg, const std::string& param, double value) {
  if (param == "p_dB") {
    cfg.p = db_to_linear(value);
  } else if (param == "L") {
    cfg.L = static_cast<int>(value);
    cfg.ris = upa_for_count(cfg.L);
  } else if (param == "q") {
    cfg.q = static_cast<int>(value);
  } else if (param == "kappa_dB") {
    cfg.kappa_H = cfg.kappa_G = db_to_linear(value);
  } else if (param == "CT") {
    cfg.coherence_time = value;
  } else {
    throw std::invalid_argument("apply_sweep_value: unknown parameter '" + param + "'");
  }
}

namespace {

struct AnalyticPair {
  double sid;    // inverse-covariance diagonal (perfect or estimated)
  double scale;  // noise scale: 1 or V
};

AnalyticPair analytic_for(const SystemConfig& cfg, CsiMode csi,
                          const EquivalentScalars& sc) {
  if (csi == CsiMode::Perfect) return {sigma_inv_diag(cfg, sc), 1.0};
  return {sigma_hat_inv_diag(cfg, sc), noise_variance_v(cfg, sc)};
}

std::vector<double> grid_with_threshold(const std::vector<double>& grid,
                                        double gamma_th) {
  std::vector<double> g = grid;
  bool found = false;
  for (double x : g)
    if (x == gamma_th) found = true;
  if (!found) g.push_back(gamma_th);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

std::size_t index_of(const std::vector<double>& g, double x) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] == x) return i;
  return 0;
}

}  // namespace

void resolve_angles(ExperimentSpec& spec) {
  if (spec.angles_explicit) return;
  CounterRng rng(spec.base.seed, kAngleStream);
  const double two_pi = 2.0 * 3.14159265358979323846;
  spec.base.lb_rx = {rng.uniform(0.0, two_pi), rng.uniform(0.0, two_pi)};
  spec.base.lb_ris = {rng.uniform(0.0, two_pi), rng.uniform(0.0, two_pi)};
  spec.base.ul_ris = {rng.uniform(0.0, two_pi), rng.uniform(0.0, two_pi)};
  spec.base.ul_tx = {rng.uniform(0.0, two_pi), rng.uniform(0.0, two_pi)};
  spec.angles_explicit = true;
}

ExperimentReport run_experiment(const ExperimentSpec& spec, int workers) {
  spec.validate();
  ExperimentSpec s = spec;
  resolve_angles(s);

  ExperimentReport rep;
  rep.spec_text = spec.canonical_text();
  rep.spec_hash = spec.hash();
  rep.tool_version = kToolVersion;
  rep.seed = s.base.seed;
  rep.sweep_param = s.sweep_param;
  rep.resolved_angles = {s.base.lb_rx.theta,  s.base.lb_rx.psi,
                         s.base.lb_ris.theta, s.base.lb_ris.psi,
                         s.base.ul_ris.theta, s.base.ul_ris.psi,
                         s.base.ul_tx.theta,  s.base.ul_tx.psi};

  for (double sweep_value : s.sweep_values) {
    SystemConfig cfg = s.base;
    apply_sweep_value(cfg, s.sweep_param, sweep_value);
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();

    SweepPointRecord point;
    point.sweep_value = sweep_value;
    const std::vector<double> grid = grid_with_threshold(s.grid, cfg.gamma_th);
    const std::size_t th_idx = index_of(grid, cfg.gamma_th);

    EquivalentScalars sc;
    bool have_sc = false;
    auto scalars = [&]() -> const EquivalentScalars& {
      if (!have_sc) {
        sc = equivalent_scalars(cfg);
        have_sc = true;
      }
      return sc;
    };

    for (const std::string& kind : s.outputs) {
      OutputRecord rec;
      rec.kind = kind;
      rec.seed = cfg.seed;
      if (kind == "analytic_cdf") {
        const AnalyticPair ap = analytic_for(cfg, s.csi_mode, scalars());
        OutputCurve curve;
        curve.grid = grid;
        for (double x : grid)
          curve.values.push_back(outage_cdf(x, cfg.p, ap.sid, cfg.N, cfg.M, ap.scale));
        rec.value = curve.values[th_idx];
        rec.curve = std::move(curve);
      } else if (kind == "asymptotic_cdf") {
        OutputCurve curve;
        curve.grid = grid;
        for (double x : grid)
          curve.values.push_back(outage_cdf_asymptotic(x, cfg, AsymptoticRegime::General));
        rec.value = curve.values[th_idx];
        rec.curve = std::move(curve);
      } else if (kind == "empirical_cdf") {
        const EmpiricalCurve ec = empirical_outage(cfg, s.phase_mode, s.csi_mode,
                                                   grid, s.trials, workers);
        rec.value = ec.values[th_idx];
        rec.has_ci = true;
        rec.ci_lo = rec.value - ec.ci_half[th_idx];
        rec.ci_hi = rec.value + ec.ci_half[th_idx];
        rec.trials = ec.trials;
        OutputCurve curve;
        curve.grid = ec.grid;
        curve.values = ec.values;
        curve.ci_half = ec.ci_half;
        rec.curve = std::move(curve);
      } else if (kind == "avg_se") {
        const AnalyticPair ap = analytic_for(cfg, s.csi_mode, scalars());
        rec.value = average_se(cfg, ap.sid, ap.scale);
      } else if (kind == "empirical_se") {
        const MeanCi mc = empirical_avg_se(cfg, s.phase_mode, s.csi_mode, s.trials, workers);
        rec.value = mc.mean;
        rec.has_ci = true;
        rec.ci_lo = mc.mean - mc.ci_half;
        rec.ci_hi = mc.mean + mc.ci_half;
        rec.trials = mc.trials;
      } else if (kind == "effective_se") {
        const AnalyticPair ap = analytic_for(cfg, s.csi_mode, scalars());
        const double se = average_se(cfg, ap.sid, ap.scale);
        rec.value = effective_se(se, cfg.coherence_time, cfg.M, cfg.L, true);
      } else if (kind == "effective_se_direct") {
        // Direct-link-only baseline: H_D alone, perfect CSI.
        const double se = average_se_from_c(1.0 / (cfg.beta_UB * cfg.p), cfg.N - cfg.M);
        rec.value = effective_se(se, cfg.coherence_time, cfg.M, cfg.L, false);
      } else {
        throw std::invalid_argument("unknown output kind '" + kind + "'");
      }
      point.outputs.push_back(std::move(rec));
    }
    point.runtime_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    rep.points.push_back(std::move(point));
  }
  return rep;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

std::string emit_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "sweep_param,sweep_value,kind,value,ci_lo,ci_hi,trials,seed\n";
  for (const auto& point : report.points) {
    for (const auto& rec : point.outputs) {
      os << csv_field(report.sweep_param) << ',' << fmt_double(point.sweep_value)
         << ',' << csv_field(rec.kind) << ',' << fmt_double(rec.value) << ',';
      if (rec.has_ci) os << fmt_double(rec.ci_lo);
      os << ',';
      if (rec.has_ci) os << fmt_double(rec.ci_hi);
      os << ',';
      if (rec.trials > 0) os << rec.trials;
      os << ',' << rec.seed << "\n";
    }
  }
  return os.str();
}

nlohmann::ordered_json report_to_json(const ExperimentReport& report) {
  nlohmann::ordered_json j;
  j["tool_version"] = report.tool_version;
  j["seed"] = report.seed;
  j["spec_hash"] = report.spec_hash;
  j["spec_text"] = report.spec_text;
  j["sweep_param"] = report.sweep_param;
  j["resolved_angles"] = report.resolved_angles;
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& point : report.points) {
    nlohmann::ordered_json jp;
    jp["sweep_value"] = point.sweep_value;
    jp["runtime_ms"] = point.runtime_ms;
    jp["outputs"] = nlohmann::ordered_json::array();
    for (const auto& rec : point.outputs) {
      nlohmann::ordered_json jr;
      jr["kind"] = rec.kind;
      jr["value"] = rec.value;
      if (rec.has_ci) {
        jr["ci_lo"] = rec.ci_lo;
        jr["ci_hi"] = rec.ci_hi;
      }
      jr["trials"] = rec.trials;
      jr["seed"] = rec.seed;
      if (rec.curve) {
        nlohmann::ordered_json jc;
        jc["grid"] = rec.curve->grid;
        jc["values"] = rec.curve->values;
        jc["ci_half"] = rec.curve->ci_half;
        jr["curve"] = std::move(jc);
      }
      jp["outputs"].push_back(std::move(jr));
    }
    j["points"].push_back(std::move(jp));
  }
  return j;
}

ExperimentReport report_from_json(const nlohmann::ordered_json& j) {
  ExperimentReport rep;
  rep.tool_version = j.at("tool_version").get<std::string>();
  rep.seed = j.at("seed").get<std::uint64_t>();
  rep.spec_hash = j.at("spec_hash").get<std::string>();
  rep.spec_text = j.at("spec_text").get<std::string>();
  rep.sweep_param = j.at("sweep_param").get<std::string>();
  rep.resolved_angles = j.at("resolved_angles").get<std::vector<double>>();
  for (const auto& jp : j.at("points")) {
    SweepPointRecord point;
    point.sweep_value = jp.at("sweep_value").get<double>();
    point.runtime_ms = jp.at("runtime_ms").get<double>();
    for (const auto& jr : jp.at("outputs")) {
      OutputRecord rec;
      rec.kind = jr.at("kind").get<std::string>();
      rec.value = jr.at("value").get<double>();
      if (jr.contains("ci_lo")) {
        rec.has_ci = true;
        rec.ci_lo = jr.at("ci_lo").get<double>();
        rec.ci_hi = jr.at("ci_hi").get<double>();
      }
      rec.trials = jr.at("trials").get<long>();
      rec.seed = jr.at("seed").get<std::uint64_t>();
      if (jr.contains("curve")) {
        OutputCurve c;
        c.grid = jr.at("curve").at("grid").get<std::vector<double>>();
        c.values = jr.at("curve").at("values").get<std::vector<double>>();
        c.ci_half = jr.at("curve").at("ci_half").get<std::vector<double>>();
        rec.curve = std::move(c);
      }
      point.outputs.push_back(std::move(rec));
    }
    rep.points.push_back(std::move(point));
  }
  return rep;
}

void emit_report_file(const ExperimentReport& report, const std::string& format,
                      const std::string& path) {
  std::string payload;
  if (format == "csv") {
    payload = emit_csv(report);
  } else if (format == "json") {
    payload = report_to_json(report).dump(2);
    payload += "\n";
  } else {
    throw std::invalid_argument("emit_report_file: format must be csv or json");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << payload;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string find_spec_file(const std::string& name, const std::string& specs_dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> tried;
  std::vector<std::string> dirs;
  if (!specs_dir.empty()) dirs.push_back(specs_dir);
  if (const char* env = std::getenv("LRIS_SPEC_DIR")) dirs.push_back(env);
  dirs.push_back("specs");
  for (const auto& d : dirs) {
    const fs::path p = fs::path(d) / (name + ".cfg");
    if (fs::exists(p)) return p.string();
    tried.push_back(p.string());
  }
  std::string msg = "spec '" + name + "' not found; tried:";
  for (const auto& t : tried) msg += " " + t;
  throw std::runtime_error(msg);
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  const double m = 0.5 * (a + b);
  return adaptive_simpson(f, a, b, f(a), f(m), f(b), tol, 40);
}

struct Check {
  std::string name;
  bool ok;
};

}  // namespace

bool run_validation(std::ostream& os, FaultInjection fault) {
  std::vector<Check> checks;
  const double pi = 3.14159265358979323846;
  const double fault_bump = fault == FaultInjection::Xi1 ? 1e-3 : 0.0;

  {
    const QuantizationFactors q1 = quantization_factors(1);
    const QuantizationFactors qi = quantization_factors(64);
    const bool ok = std::fabs(q1.xi1 + fault_bump - 2.0 / pi) < 1e-12 &&
                    std::fabs(q1.xi2) < 1e-12 &&
                    std::fabs(qi.xi1 + fault_bump - 1.0) < 1e-12 &&
                    std::fabs(qi.xi2 - 1.0) < 1e-12;
    checks.push_back({"quantization factors (q=1, q->inf)", ok});
  }
  {
    const bool ok = std::fabs(avg_fading_gain(0.0) - std::sqrt(pi) / 2.0) < 1e-12;
    checks.push_back({"average fading gain at kappa=0", ok});
  }
  {
    bool ok = true;
    CounterRng rng(7, 99);
    for (int t = 0; t < 20 && ok; ++t) {
      SystemConfig cfg;
      cfg.M = 2 + static_cast<int>(rng.next_below(3));
      cfg.N = cfg.M + 1 + static_cast<int>(rng.next_below(4));
      cfg.L = 64 << rng.next_below(3);
      cfg.q = 1 + static_cast<int>(rng.next_below(4));
      cfg.p = db_to_linear(rng.uniform(-5.0, 25.0));
      cfg.beta_UB = std::pow(10.0, rng.uniform(-4.0, -1.0));
      cfg.beta_LB = std::pow(10.0, rng.uniform(-3.0, -1.0));
      cfg.beta_UL = std::pow(10.0, rng.uniform(-3.0, -1.0));
      cfg.kappa_H = rng.uniform(0.0, 12.0);
      cfg.kappa_G = rng.uniform(0.0, 12.0);
      cfg.tx = upa_for_count(cfg.M);
      cfg.rx = upa_for_count(cfg.N);
      cfg.ris = upa_for_count(cfg.L);
      cfg.lb_rx = {rng.uniform(0.0, 2.0 * pi), rng.uniform(0.0, 2.0 * pi)};
      cfg.ul_tx = {rng.uniform(0.0, 2.0 * pi), rng.uniform(0.0, 2.0 * pi)};
      EquivalentScalars sc;
      try {
        sc = equivalent_scalars(cfg);
      } catch (const std::domain_error&) {
        continue;
      }
      const EquivalentStats st = make_equivalent_stats(cfg);
      const CMatrix inv_s = inverse(st.Sigma);
      const CMatrix inv_h = inverse(st.Sigma_hat);
      const double sid = sigma_inv_diag(cfg, sc);
      const double sid_h = sigma_hat_inv_diag(cfg, sc);
      for (int i = 0; i < cfg.M; ++i) {
        ok = ok && std::fabs(inv_s(i, i).real() - sid) <= 1e-10 * sid;
        ok = ok && std::fabs(inv_h(i, i).real() - sid_h) <= 1e-10 * sid_h;
      }
    }
    checks.push_back({"Sherman-Morrison diagonals vs direct inversion", ok});
  }
  {
    bool ok = true;
    for (int t = 0; t < 5 && ok; ++t) {
      const double c = std::pow(10.0, -2.0 + t);
      const int gap = 4;
      const double se = average_se_from_c(c, gap);
      auto one_minus_f = [&](double x) {
        double term = 1.0, sum = 1.0;
        const double y = c * x;
        for (int k = 1; k <= gap; ++k) {
          term *= y / k;
          sum += term;
        }
        return std::exp(-y) * sum / (1.0 + x);
      };
      const double upper = 60.0 / c + 60.0;
      const double quad = integrate(one_minus_f, 0.0, upper, 1e-12) / std::log(2.0);
      ok = std::fabs(se - quad) <= 1e-6 * quad;
    }
    checks.push_back({"closed-form SE vs CDF quadrature", ok});
  }
  {
    SystemConfig cfg;
    const EquivalentScalars sc = equivalent_scalars(cfg);
    const double sid = sigma_inv_diag(cfg, sc);
    bool ok = outage_cdf(0.0, cfg.p, sid, cfg.N, cfg.M, 1.0) == 0.0;
    double prev = 0.0;
    for (int i = 1; i <= 200; ++i) {
      const double x = 0.05 * i;
      const double f = outage_cdf(x, cfg.p, sid, cfg.N, cfg.M, 1.0);
      ok = ok && f >= prev && f <= 1.0;
      prev = f;
    }
    ok = ok && outage_cdf(700.0 / sid * cfg.p, cfg.p, sid, cfg.N, cfg.M, 1.0) > 1.0 - 1e-12;
    checks.push_back({"outage CDF validity (limits, monotone)", ok});
  }
  {
    const double f4 = 4.0 * (256.0 + 1.0) / 1200.0;
    const double f2 = 2.0 * (256.0 + 1.0) / 1200.0;
    const bool ok = f4 == 1028.0 / 1200.0 && f2 == 514.0 / 1200.0 &&
                    std::fabs(effective_se(1.0, 1200.0, 4, 256, true) -
                              (1.0 - 1028.0 / 1200.0)) < 1e-15;
    checks.push_back({"pilot overhead arithmetic (CT=1200, L=256)", ok});
  }

  bool all = true;
  for (const auto& c : checks) {
    os << (c.ok ? "[ ok ] " : "[FAIL] ") << c.name << "\n";
    all = all && c.ok;
  }
  return all;
}

}  // namespace lris
