#pragma once

#include <functional>
#include <span>

#include "rvdp/liouvillian.hpp"

namespace rvdp {

/// Error targets for the adaptive Dormand-Prince 5(4) stepper.
struct StepControl {
  double relative = 1e-8;
  double absolute = 1e-10;
  double initial_step = 1e-3;
  /// The state is Hermitian: the initial matrix is symmetrized and every
  /// derivative is evaluated on the lower triangle and mirrored.
  bool hermitian = false;
};

using MatrixObserver = std::function<void(double t, const CMatrix& state)>;

/// Integrates d/dt X = L(t) X for an arbitrary (not necessarily Hermitian)
/// matrix X, calling observer at every entry of `times` (which must be
/// non-decreasing and start at the initial time). Returns X at times.back().
///
/// Integration is error-controlled only; no renormalization is applied.
CMatrix propagate(const Liouvillian& generator, const CMatrix& initial,
                  std::span<const double> times, const MatrixObserver& observer,
                  const StepControl& control = {});

/// Evenly spaced times t0, t0 + dt, ... up to and including t1 (the last
/// point is clamped to t1 when the spacing does not divide the span).
std::vector<double> uniform_times(double t0, double t1, double dt);

}  // namespace rvdp
