// SPDX-License-Identifier: Apache-2.0
#ifndef LRIS_EXPERIMENT_HPP
#define LRIS_EXPERIMENT_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lris/config.hpp"
#include "lris/montecarlo.hpp"

namespace lris {

/// Parses "key = value" lines; '#' starts a comment, blank lines ignored.
/// Later keys override earlier ones.
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// One experiment: a base configuration, one swept parameter, and a list
/// of requested outputs. All dB-valued keys carry the unit in their name
/// (p_dB, kappa_dB); internal state is linear.
struct ExperimentSpec {
  std::string name = "experiment";
  SystemConfig base;
  bool angles_explicit = false;      // angles given in the spec text
  std::string sweep_param = "p_dB";  // p_dB | L | q | kappa_dB | CT
  std::vector<double> sweep_values{0.0};
  PhaseMode phase_mode = PhaseMode::Mismatch;
  CsiMode csi_mode = CsiMode::Perfect;
  std::vector<std::string> outputs{"analytic_cdf"};
  long trials = 20000;
  std::vector<double> grid;  // CDF threshold grid (optional)

  /// Builds a spec from parsed key-values; unknown keys or bad values are
  /// collected and thrown together as std::invalid_argument.
  static ExperimentSpec from_key_values(
      const std::map<std::string, std::string>& kv);

  /// Canonical key-value serialization (fixed key order).
  std::string canonical_text() const;

  /// FNV-1a hash of canonical_text(), hex.
  std::string hash() const;

  std::vector<std::string> violations() const;
  void validate() const;
};

/// Applies one swept value to a configuration.
void apply_sweep_value(SystemConfig& cfg, const std::string& param, double value);

struct OutputCurve {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> ci_half;
};

struct OutputRecord {
  std::string kind;
  double value = 0.0;
  bool has_ci = false;
  double ci_lo = 0.0, ci_hi = 0.0;
  long trials = 0;        // 0 for analytic outputs
  std::uint64_t seed = 0;
  std::optional<OutputCurve> curve;
};

struct SweepPointRecord {
  double sweep_value = 0.0;
  std::vector<OutputRecord> outputs;
  double runtime_ms = 0.0;
};

struct ExperimentReport {
  std::string spec_text;   // canonical spec echo
  std::string spec_hash;
  std::string tool_version;
  std::uint64_t seed = 0;
  std::string sweep_param;
  std::vector<double> resolved_angles;  // 8 radians
  std::vector<SweepPointRecord> points;
};

/// Draws the eight steering angles from the master seed when the spec did
/// not pin them explicitly. run_experiment applies this itself.
void resolve_angles(ExperimentSpec& spec);

/// Executes the experiment. Deterministic given spec.base.seed; the worker
/// count changes runtime only.
ExperimentReport run_experiment(const ExperimentSpec& spec, int workers = 0);

/// Flat CSV: header "sweep_param,sweep_value,kind,value,ci_lo,ci_hi,trials,seed",
/// one row per (sweep value, output kind), LF line endings. Analytic rows
/// leave ci/trials fields empty.
std::string emit_csv(const ExperimentReport& report);

/// Full report as JSON with stable key order.
nlohmann::ordered_json report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::ordered_json& j);

/// Writes CSV or JSON to `path` ("-" for stdout is handled by the CLI).
void emit_report_file(const ExperimentReport& report, const std::string& format,
                      const std::string& path);

/// Built-in figure-style specs are data files <dir>/<name>.cfg; the
/// directory comes from `specs_dir`, else $LRIS_SPEC_DIR, else "specs".
std::string find_spec_file(const std::string& name, const std::string& specs_dir);

enum class FaultInjection { None, Xi1 };

/// Fast invariant suite (quantization factors, Sherman-Morrison, SE
/// quadrature identity, CDF validity, pilot-overhead arithmetic). Prints
/// one line per check; returns true when all pass. FaultInjection::Xi1
/// perturbs the quantization factor path to exercise failure reporting.
bool run_validation(std::ostream& os, FaultInjection fault = FaultInjection::None);

extern const char* const kToolVersion;

}  // namespace lris

#endif  // LRIS_EXPERIMENT_HPP
