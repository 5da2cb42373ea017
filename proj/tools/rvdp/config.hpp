#pragma once

#include <string>
#include <vector>

#include <rvdp/rvdp.hpp>

#include "json.hpp"

namespace rvdp::cli {

/// Thrown for malformed or inconsistent configuration input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FrameKind { Laboratory, Drive, Rotating };

struct EvolveSection {
  double t_final = 200.0;
  double record_interval = 0.1;
  std::vector<double> snapshot_times;
  bool binary_snapshots = false;
  bool operator==(const EvolveSection&) const = default;
};

struct WignerSection {
  bool steady = true;   // Omega = 0 steady state; otherwise evolve to `time`
  double time = 200.0;
  double extent = 0.0;  // half width of the square grid; 0 picks one from the populations
  int points = 201;
  bool overlay = true;  // classical limit-cycle file when the mapping exists
  bool operator==(const WignerSection&) const = default;
};

struct SweepSection {
  std::vector<std::string> sets;  // parameter-set names; empty uses `params`
  std::vector<double> delta_axis = default_delta_axis();
  std::vector<double> omega_axis = default_omega_axis();
  ObservableSet observables{};
  double t_final = 200.0;
  int samples_per_period = 64;
  std::size_t checkpoint_interval = 16;
  bool operator==(const SweepSection&) const = default;
};

struct SpectrumSection {
  double tau = 200.0;
  double t_max = 1000.0 * std::numbers::pi;
  double dt = 0.5;
  double omega_min = -3.0;
  double omega_max = 3.0;
  double resolution = 1.0 / 500.0;
  SpectrumNormalization normalization = SpectrumNormalization::Raw;
  bool operator==(const SpectrumSection&) const = default;
};

struct ClassicalSection {
  double t_settle = 0.0;  // 0: 200 / eps
  int n_periods = 5;
  double x0 = 0.1;
  double v0 = 0.0;
  double t_final = 0.0;  // > 0 also writes a driven trajectory up to t_final
  double sample_dt = 0.05;
  bool operator==(const ClassicalSection&) const = default;
};

struct RunConfig {
  std::string preset;
  SystemParams params{};
  DriveModel drive = DriveModel::Rwa;
  FrameKind frame = FrameKind::Drive;
  double frame_omega = 0.0;  // used by FrameKind::Rotating
  InitialState initial = InitialState::coherent({0.75, 0.75});
  int dim = 20;
  Tolerances tolerances{};
  EvolveSection evolve{};
  WignerSection wigner{};
  SweepSection sweep{};
  SpectrumSection spectrum{};
  ClassicalSection classical{};

  Frame resolved_frame() const;
  /// Throws ConfigError for values outside their domains.
  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& config);
/// Merges `j` over `base`; unknown keys raise ConfigError.
RunConfig merge_json(RunConfig base, const nlohmann::json& j);
RunConfig from_json(const nlohmann::json& j);

struct PresetInfo {
  std::string name;
  std::string description;
};

std::vector<PresetInfo> list_presets();
/// Throws ConfigError for an unknown name.
RunConfig preset_config(const std::string& name);

/// Applies "dotted.key=value" (value parsed as JSON, else taken as a string).
RunConfig apply_override(const RunConfig& config, const std::string& assignment);

}  // namespace rvdp::cli
