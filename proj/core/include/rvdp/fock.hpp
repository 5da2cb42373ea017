#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

namespace rvdp {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

inline constexpr Complex kI{0.0, 1.0};

/// Ladder, position and momentum operators on the truncated Fock space
/// {|0>, ..., |dim-1>}.
struct LadderOperators {
  CMatrix annihilation;
  CMatrix creation;
  CMatrix position;  // (a + a^dag) / sqrt(2)
  CMatrix momentum;  // (a - a^dag) / (sqrt(2) i)
};

LadderOperators build_ladder_operators(int dim);

/// Hermitian, unit-trace density matrix in the truncated Fock basis.
///
/// Construction checks Hermiticity to 1e-10 and the trace to the given
/// tolerance; the leakage bound is checked by the code that produces states
/// (state preparation and evolution), since it is a property of the
/// truncation rather than of a single matrix.
class DensityMatrix {
 public:
  static constexpr double kHermiticityTolerance = 1e-10;
  static constexpr double kDefaultTraceTolerance = 1e-8;

  explicit DensityMatrix(CMatrix entries,
                         double trace_tolerance = kDefaultTraceTolerance);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const CMatrix& matrix() const noexcept { return entries_; }
  Complex operator()(int k, int l) const { return entries_(k, l); }

  double trace() const;
  double purity() const;
  double hermiticity_residual() const;
  /// Population of the highest retained Fock level.
  double leakage() const;

 private:
  CMatrix entries_;
};

double hermiticity_residual(const CMatrix& m);

/// |n><n| in dimension dim.
DensityMatrix fock_state(int n, int dim);

struct CoherentStatePreparation {
  DensityMatrix state;
  double discarded_weight;  // 1 - sum of retained Poisson weights
};

/// Coherent state |alpha0><alpha0| truncated to dim levels and
/// renormalized. Throws TruncationError (with a suggested dimension) when the
/// top-level population exceeds leakage_threshold.
CoherentStatePreparation prepare_coherent_state(Complex alpha0, int dim,
                                                double leakage_threshold = 1e-6);

DensityMatrix coherent_state(Complex alpha0, int dim, double leakage_threshold = 1e-6);

/// Smallest dimension for which a coherent state of amplitude alpha0 keeps the
/// top-level population below the threshold.
int required_coherent_dim(Complex alpha0, double leakage_threshold = 1e-6);

/// log(n!) for n >= 0.
double log_factorial(int n);

/// Rates and drive of the generalized Rayleigh-van der Pol oscillator, in
/// units of the bare oscillator frequency.
struct SystemParams {
  double gamma1_plus = 0.0;   // linear gain
  double gamma1_minus = 0.0;  // linear damping
  double alpha = 0.0;         // two-photon loss
  double beta = 0.0;          // D[x a] rate
  double delta = 0.0;         // D[p a] rate
  double drive_strength = 0.0;   // Omega
  double drive_frequency = 1.0;  // omega_D

  double detuning() const noexcept { return drive_frequency - 1.0; }
  double epsilon() const noexcept { return gamma1_plus - gamma1_minus; }

  /// alpha/eps, beta/eps, delta/eps, Omega/eps; empty when eps == 0.
  struct Scaled {
    double alpha, beta, delta, drive_strength, detuning;
  };
  std::optional<Scaled> scaled() const;

  bool is_rotation_invariant() const noexcept { return beta == delta; }

  SystemParams with_drive(double strength) const {
    SystemParams p = *this;
    p.drive_strength = strength;
    return p;
  }
  SystemParams with_detuning(double detuning_value) const {
    SystemParams p = *this;
    p.drive_frequency = 1.0 + detuning_value;
    return p;
  }

  /// Throws InvalidParameterError for negative rates or omega_D <= 0.
  void validate() const;

  bool operator==(const SystemParams&) const = default;
};

}  // namespace rvdp
