#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kcl/scenarios.hpp"

namespace kcl {

struct RunConfig {
  ScenarioConfig scenario;
  SchemeConfig scheme;
  double t_end = 1.0;
  double snapshot_every = 1.0;
  std::filesystem::path output_dir = "kcl_output";
  bool ct_enabled = true;
  double kink_threshold_deg = 4.0;

  void validate() const;
};

/// Parses the sectioned key = value config text. Unknown sections or keys
/// are rejected so typos do not silently fall back to defaults.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::filesystem::path& path);

/// Writes every key, including defaults, in the format parse_run_config reads.
void write_run_config(std::ostream& out, const RunConfig& cfg);

/// Owns the evolving state of one run and advances it step by step.
class Simulation {
 public:
  explicit Simulation(const RunConfig& cfg);

  const RunConfig& config() const { return cfg_; }
  const Field& field() const { return state_.field; }
  const CtState& ct() const { return state_.ct; }
  const FrontMesh& mesh() const { return state_.mesh; }
  double time() const { return state_.field.t; }
  long steps() const { return steps_; }
  /// Attempts thrown away and retried with half the step.
  long rejected_steps() const { return rejected_; }

  static constexpr int kMaxStepHalvings = 6;

  /// One RK2 step of at most `dt_max`; returns the step taken. The CFL step
  /// is halved (up to kMaxStepHalvings times) while the result is not
  /// admissible.
  double step(double dt_max);
  /// One step towards `t_target`; when the step is clamped the clock lands
  /// on t_target exactly.
  double step_to(double t_target);

  /// Steps until `t_target` is hit exactly.
  void advance_to(double t_target);

  DiagnosticsRecord diagnostics() const;

 private:
  ScenarioState trial_step(double dt) const;

  RunConfig cfg_;
  ScenarioState state_;
  long steps_ = 0;
  long rejected_ = 0;
};

struct RunSummary {
  int exit_code = 0;
  std::string message;
  long steps = 0;
  double t_final = 0.0;
  std::vector<DiagnosticsRecord> diagnostics;
};

/// Runs a configuration to t_end, writing the manifest, diagnostics table and
/// snapshots under cfg.output_dir. Solver failures are reported through the
/// summary (non-zero exit code) after flushing the last good snapshot.
RunSummary run(const RunConfig& cfg, std::ostream* log = nullptr);

inline constexpr const char* kDiagnosticsHeader =
    "t,m_max,m_min,v_max,v_min,height,div1_max,div2_max,div3_max,kink_count";

std::string format_diagnostics_row(const DiagnosticsRecord& d);

std::string version_string();

}  // namespace kcl
