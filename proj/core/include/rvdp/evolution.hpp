#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "rvdp/fock.hpp"
#include "rvdp/liouvillian.hpp"
#include "rvdp/propagator.hpp"

namespace rvdp {

struct Tolerances {
  double relative = 1e-8;
  double absolute = 1e-10;
  double trace_drift = 1e-8;
  double leakage = 1e-6;
  double hermiticity = 1e-10;

  bool operator==(const Tolerances&) const = default;
};

/// Scalar observables recorded at every record time, in the frame of the
/// evolution.
struct ObservableRecord {
  double t = 0.0;
  double trace = 1.0;
  double number = 0.0;  // <a^dag a>
  Complex a{0.0};       // <a>
  double s_q = 0.0;     // |sum_n rho_{n,n-1}|
};

struct Trajectory {
  std::vector<ObservableRecord> records;  // dense, one per record time
  std::vector<double> times;              // snapshot times
  std::vector<DensityMatrix> states;      // snapshots, matching `times`
  Frame frame;
  double max_trace_drift = 0.0;
  double max_leakage = 0.0;
  double max_hermiticity_residual = 0.0;

  /// Snapshot closest to t (within half a record interval); throws
  /// SamplingError when none is stored there.
  const DensityMatrix& state_at(double t) const;
};

struct EvolveOptions {
  double t_start = 0.0;
  double t_final = 0.0;
  double record_interval = 0.1;
  /// Full matrices are stored at record times >= snapshot_from (the final
  /// state is always stored).
  double snapshot_from = std::numeric_limits<double>::infinity();
  Tolerances tolerances{};
  double initial_step = 1e-3;
};

/// Integrates the master equation from rho0 at options.t_start.
///
/// Throws TruncationError when the top Fock population exceeds the leakage
/// tolerance and IntegrationAccuracyError when |Tr rho - 1| drifts beyond the
/// trace tolerance. No renormalization is applied.
Trajectory evolve(const DensityMatrix& rho0, const SystemParams& params, DriveModel drive,
                  Frame frame, const EvolveOptions& options);

/// Scalar observables of a single state.
ObservableRecord record_observables(double t, const CMatrix& rho);

enum class SteadyStateStrategy { Integration, Nullspace };

struct SteadyStateOptions {
  SteadyStateStrategy strategy = SteadyStateStrategy::Nullspace;
  int dim = 20;
  double convergence = 1e-10;  // per-period change (integration strategy)
  double t_max = 1e4;
  Tolerances tolerances{};
};

/// Omega = 0 stationary state. Rotating frames are accepted only for
/// beta == delta (otherwise the undriven generator is time dependent there).
///
/// Integration: evolve from a coherent state one period 2 pi / omega_D at a
/// time until both the period-averaged populations and the full state change
/// by less than `convergence` between consecutive periods.
/// Nullspace: solve L0 rho = 0 on the closed block (diagonal family for
/// beta == delta, even k - l parity otherwise) with unit trace.
DensityMatrix steady_state_undriven(const SystemParams& params, Frame frame,
                                    const SteadyStateOptions& options = {});

/// Smallest recorded time after which the period averages of <a^dag a> and
/// S_q change by less than rel_tol between consecutive periods; changes are
/// measured relative to max(|value|, 1). Needs at least three full periods
/// after the candidate. Throws NotStationaryError otherwise.
double detect_quasi_stationary(const Trajectory& traj, double period,
                               double rel_tol = 1e-4);

/// CSV columns t, trace, number, re_a, im_a, s_q.
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);

/// Binary snapshot dump, little-endian: int32 snapshot count, then per
/// snapshot float64 t, int32 dim and dim*dim (re, im) float64 pairs in
/// row-major order.
void write_snapshots_binary(const Trajectory& traj, std::ostream& os);

}  // namespace rvdp
