#pragma once

#include <iosfwd>
#include <numbers>
#include <vector>

#include "rvdp/evolution.hpp"

namespace rvdp {

/// Two-time correlation C(t, tau) = <a^dag(tau) a(tau + t)> for t >= 0,
/// evaluated in the frame rotating at omega_D.
struct CorrelationRecord {
  double tau = 0.0;
  double dt = 0.0;
  std::vector<double> lags;
  std::vector<Complex> values;
  Complex asymptote{0.0};  // mean over the final 10% of lags
  double number_at_tau = 0.0;
  /// False when the evolution up to tau failed the quasi-stationarity test.
  bool quasi_stationary = true;
  /// C(-t) = conj C(t) holds exactly only for a time-independent generator.
  bool conjugate_extension_exact = true;
};

struct CorrelationOptions {
  double tau = 200.0;
  double t_max = 1000.0 * std::numbers::pi;
  double dt = 0.5;
  double record_interval = 0.05;
  Tolerances tolerances{};
};

/// Regression-theorem correlation: evolve rho0 (given at t = 0) to tau, form
/// B = rho(tau) a^dag, propagate B under the same generator to tau + t and
/// take Tr[a B(t)].
CorrelationRecord correlation(const SystemParams& params, DriveModel drive,
                              const DensityMatrix& rho0, const CorrelationOptions& options = {});

/// Correlation from a given state at time tau (already in the drive frame).
CorrelationRecord correlation_from_state(const Liouvillian& generator, const CMatrix& rho_tau,
                                         double tau, double t_max, double dt,
                                         const Tolerances& tolerances = {});

enum class SpectrumNormalization { Raw, BroadPeakMax };

struct SpectrumOptions {
  double omega_min = -3.0;
  double omega_max = 3.0;
  double resolution = 1.0 / 500.0;
  int smoothing_window = 5;
};

struct Spectrum {
  double tau = 0.0;
  std::vector<double> omega;
  std::vector<double> values;  // spike removed
  double spike_weight = 0.0;   // 2 pi |asymptote|
  double imag_residue = 0.0;   // max |Im| / max |Re| before discarding
  bool conjugate_extension_exact = true;
};

/// S(omega) = int dt exp(-i omega t) (C(t) - C_inf) with C(-t) = conj C(t),
/// trapezoid rule on the lag grid, evaluated directly on the omega grid.
Spectrum power_spectrum(const CorrelationRecord& corr, const SpectrumOptions& options = {});

/// Location of the maximum after a centered moving average; ties go to the
/// smaller |omega|. Throws NoPeakError when max / median < 1.5.
double broad_peak_location(const Spectrum& spectrum, int smoothing_window = 5);

/// Lag-domain energy dt sum_{|j| <= M} |D_j|^2 of the spike-free symmetric
/// correlation and the matching frequency-domain sum over the full DFT grid.
struct ParsevalCheck {
  double lag_energy = 0.0;
  double spectral_energy = 0.0;
};
ParsevalCheck parseval_check(const CorrelationRecord& corr);

/// CSV with comment header lines (tau, spike weight, omega_obs, normalization).
void write_spectrum_csv(const Spectrum& spectrum, std::ostream& os,
                        SpectrumNormalization normalization = SpectrumNormalization::Raw,
                        int smoothing_window = 5);

}  // namespace rvdp
