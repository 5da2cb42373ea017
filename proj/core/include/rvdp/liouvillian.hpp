#pragma once

#include <vector>

#include "rvdp/fock.hpp"

namespace rvdp {

/// Full: Omega sin(omega_D t) x.  Rwa: co-rotating part only.
enum class DriveModel { Full, Rwa };

/// Reference frame rotating at omega_r about a^dag a; omega_r = 0 is the
/// laboratory frame.
class Frame {
 public:
  constexpr Frame() = default;
  static constexpr Frame laboratory() { return Frame{}; }
  static constexpr Frame rotating(double omega_r) { return Frame{omega_r}; }

  constexpr double omega_r() const noexcept { return omega_r_; }
  constexpr bool is_laboratory() const noexcept { return omega_r_ == 0.0; }
  constexpr bool operator==(const Frame&) const = default;

 private:
  constexpr explicit Frame(double w) : omega_r_(w) {}
  double omega_r_ = 0.0;
};

/// C rho C^dag - {C^dag C, rho}/2.
CMatrix apply_dissipator(const CMatrix& jump, const CMatrix& rho);

/// Master-equation right-hand side assembled from dense operator products.
/// Rotating frames delegate to rhs_rotating.
CMatrix rhs_generic(const SystemParams& params, DriveModel drive, Frame frame,
                    double t, const CMatrix& rho);

/// Banded Fock-basis stencil of the laboratory-frame master equation.
/// Throws UnsupportedConfigurationError for a rotating frame.
CMatrix rhs_fock_explicit(const SystemParams& params, DriveModel drive, Frame frame,
                          double t, const CMatrix& rho);

/// Rotating-frame master equation with the transformed x a / p a dissipators
/// built from y(t) = (exp(-i omega_r t) - 1) a / sqrt(2).
CMatrix rhs_rotating(const SystemParams& params, DriveModel drive, double omega_r,
                     double t, const CMatrix& rho);

/// U^dag rho U with U = exp(-i omega_r a^dag a t).
CMatrix to_rotating_frame(const CMatrix& rho_lab, double omega_r, double t);
/// Inverse of to_rotating_frame.
CMatrix to_laboratory_frame(const CMatrix& rho_rot, double omega_r, double t);

/// Precomputed generator used by the integrators.
///
/// Every frame is evaluated with the banded stencil: conjugation by the
/// diagonal U(t) only rephases the couplings, so a rotating frame costs the
/// same O(N^2) as the laboratory frame for any beta, delta.
///
/// Boundary convention: operator products are taken inside the truncated
/// space, so (a a^dag)_{N-1,N-1} = 0 and the generator is exactly trace
/// preserving for every input.
class Liouvillian {
 public:
  Liouvillian(const SystemParams& params, DriveModel drive, Frame frame, int dim);

  int dim() const noexcept { return dim_; }
  const SystemParams& params() const noexcept { return params_; }
  DriveModel drive() const noexcept { return drive_; }
  Frame frame() const noexcept { return frame_; }

  /// out = L(t) rho. out must not alias rho. With `hermitian` the input is
  /// taken to be Hermitian: only the lower triangle is evaluated and the upper
  /// one is filled by conjugation, so the output is exactly Hermitian.
  void apply(double t, const Complex* rho, Complex* out, bool hermitian = false) const;
  CMatrix operator()(double t, const CMatrix& rho) const;

  /// True when L(t) does not depend on t.
  bool time_independent() const noexcept;

 private:
  SystemParams params_;
  DriveModel drive_;
  Frame frame_;
  int dim_;

  // Per-entry stencil coefficients, column-major (l * dim + k).
  std::vector<Complex> diag_;
  std::vector<double> gain_;        // source (k-1, l-1)
  std::vector<double> loss_;        // source (k+1, l+1)
  std::vector<double> two_photon_;  // source (k+2, l+2)
  std::vector<double> asym_;        // 4 per entry, scaled by (beta - delta) / 4
  std::vector<double> sqrt_n_;      // sqrt(n), n = 0..dim+2
};

}  // namespace rvdp
