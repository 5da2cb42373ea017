#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "rvdp/fock.hpp"

namespace rvdp {

/// Scaled coefficients of the classical driven oscillator
///   x'' + x = -eps Obar sin((1 + eps Dbar) t) + eps (1 - g_vdp x^2 - g_ray x'^2) x'.
struct ClassicalParams {
  double epsilon = 0.0;
  double gamma2_vdp = 0.0;
  double gamma2_ray = 0.0;
  double omega_bar = 0.0;  // Omega / eps
  double delta_bar = 0.0;  // Delta / eps

  /// g_vdp = abar + 2 bbar - dbar, g_ray = abar + dbar. Throws
  /// InvalidParameterError for eps == 0 or a negative coefficient.
  static ClassicalParams from_system(const SystemParams& p);

  double detuning() const noexcept { return epsilon * delta_bar; }
};

struct ClassicalState {
  double x = 0.0;
  double v = 0.0;
};

struct ClassicalSample {
  double t;
  double x;
  double v;
};

ClassicalState classical_rhs(const ClassicalState& s, double t, const ClassicalParams& cp);

/// 2 (g_vdp + 3 g_ray)^{-1/2}; throws DegenerateLimitCycleError when the sum
/// is not positive.
double limit_cycle_amplitude(const ClassicalParams& cp);

/// Adaptive Dormand-Prince integration (rel/abs 1e-10) sampled at `times`.
std::vector<ClassicalSample> integrate_classical(const ClassicalParams& cp,
                                                 ClassicalState start,
                                                 std::span<const double> times);

struct LimitCycle {
  double amplitude = 0.0;
  std::vector<double> period_amplitudes;  // max |x| per recorded period
  std::vector<ClassicalSample> trajectory;
};

struct LimitCycleOptions {
  double t_settle = 0.0;  // 0: 200 / eps
  int n_periods = 5;
  int samples_per_period = 2000;
  ClassicalState start{0.1, 0.0};
};

/// Settles an undriven trajectory and measures max |x| over n_periods periods
/// of length 2 pi. Throws ConvergenceError when consecutive period maxima
/// differ by more than 1%.
LimitCycle extract_limit_cycle(const ClassicalParams& cp, const LimitCycleOptions& options = {});

void write_classical_csv(std::span<const ClassicalSample> samples, std::ostream& os);

}  // namespace rvdp
