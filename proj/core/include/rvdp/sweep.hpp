#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "rvdp/evolution.hpp"
#include "rvdp/observables.hpp"
#include "rvdp/spectrum.hpp"

namespace rvdp {

struct InitialState {
  enum class Kind { Steady, Coherent, Fock };
  Kind kind = Kind::Steady;  // undriven steady state
  Complex alpha{0.0};
  int fock = 0;

  static InitialState steady() { return {}; }
  static InitialState coherent(Complex a) { return {Kind::Coherent, a, 0}; }
  static InitialState fock_state(int n) { return {Kind::Fock, Complex{0.0}, n}; }

  bool operator==(const InitialState&) const = default;
};

DensityMatrix prepare_initial_state(const InitialState& init, const SystemParams& params, int dim);

struct ObservableSet {
  bool sq_bar = true;
  bool n_bar = true;
  bool d_bar = false;
  bool omega_obs = false;

  bool operator==(const ObservableSet&) const = default;
};

/// Settings of the per-point pipeline: evolve in the drive frame over an
/// integer number of drive periods (at least t_final), check quasi-stationarity,
/// then average over the final period.
struct PointSettings {
  int dim = 20;
  DriveModel drive = DriveModel::Rwa;
  InitialState initial{};
  double t_final = 200.0;
  int samples_per_period = 64;
  Tolerances tolerances{};
  PolarGridSpec polar{};
  int deformation_samples = 32;
  double lag_t_max = 1000.0 * std::numbers::pi;
  double lag_dt = 0.5;
  SpectrumOptions spectrum{};
};

struct PointRecord {
  std::size_t i_delta = 0;
  std::size_t i_omega = 0;
  double delta = 0.0;
  double omega = 0.0;
  std::string status = "ok";  // "ok" or an error description
  double sq_bar = std::numeric_limits<double>::quiet_NaN();
  double n_bar = std::numeric_limits<double>::quiet_NaN();
  double d_bar = std::numeric_limits<double>::quiet_NaN();
  double omega_obs = std::numeric_limits<double>::quiet_NaN();
  double t_ref = std::numeric_limits<double>::quiet_NaN();
  double t_end = 0.0;
  double max_leakage = 0.0;
  double max_trace_drift = 0.0;
  double max_hermiticity = 0.0;

  bool ok() const { return status == "ok"; }
};

/// Runs the per-point pipeline for params (Delta and Omega already set).
/// r_undriven is used only when d_bar is requested. Library errors are
/// reported through the record status.
PointRecord evaluate_point(const SystemParams& params, const PointSettings& settings,
                           const ObservableSet& observables, const DensityMatrix& initial,
                           double r_undriven);

struct SweepSpec {
  SystemParams base;  // detuning and drive strength are overridden per point
  PointSettings settings{};
  ObservableSet observables{};
  std::vector<double> delta_axis;
  std::vector<double> omega_axis;
  std::string checkpoint_path;  // empty: no checkpointing
  std::size_t checkpoint_interval = 16;

  /// Throws InvalidParameterError for empty or unsorted axes.
  void validate() const;
};

/// Default axes: 21 points on [-0.3, 0.3] and [0, 0.6].
std::vector<double> default_delta_axis();
std::vector<double> default_omega_axis();

struct SweepResult {
  std::vector<double> delta_axis;
  std::vector<double> omega_axis;
  std::vector<PointRecord> points;  // index i_omega * delta_axis.size() + i_delta
  double r_undriven = std::numeric_limits<double>::quiet_NaN();

  const PointRecord& at(std::size_t i_delta, std::size_t i_omega) const {
    return points[i_omega * delta_axis.size() + i_delta];
  }
  std::vector<std::size_t> failed() const;
};

using SweepProgress = std::function<void(std::size_t done, std::size_t total)>;

/// Evaluates every grid point on `workers` threads. The result does not
/// depend on the worker count. With a checkpoint path, completed points are
/// written every checkpoint_interval completions and reloaded on start.
SweepResult run_sweep(const SweepSpec& spec, int workers, const SweepProgress& progress = {});

void write_sweep_csv(const SweepResult& result, std::ostream& os);
std::string sweep_to_json(const SweepResult& result);

std::string points_to_json(const std::vector<PointRecord>& points);
std::vector<PointRecord> points_from_json(const std::string& text);

struct TongueMetrics {
  double max_sq_bar = 0.0;
  double max_n_bar = 0.0;
  /// max |S(Delta) - S(-Delta)| over mirrored pairs of the Delta axis.
  double mirror_residual = 0.0;
  /// Per Delta column: S-bar non-decreasing in Omega within 1e-5.
  std::vector<bool> monotone_in_omega;
  /// Pearson correlation of S-bar and N-bar over the grid.
  double sq_n_correlation = 0.0;
};

/// Throws IncompleteResultError listing failed points.
TongueMetrics tongue_metrics(const SweepResult& result);

}  // namespace rvdp
