#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "rvdp/evolution.hpp"
#include "rvdp/fock.hpp"

namespace rvdp {

struct Expectations {
  Complex a{0.0};
  double number = 0.0;
  double x = 0.0;
  double p = 0.0;
};

Expectations expectations(const CMatrix& rho);
inline Expectations expectations(const DensityMatrix& rho) { return expectations(rho.matrix()); }

/// W(x, p) sampled on a rectangular grid; values(i, j) belongs to
/// (x_axis[i], p_axis[j]).
struct WignerGrid {
  std::vector<double> x_axis;
  std::vector<double> p_axis;
  RMatrix values;
  double norm_estimate = 0.0;  // trapezoid integral over the grid
};

/// Wigner function through the Fock-Laguerre kernel.
WignerGrid wigner(const CMatrix& rho, std::span<const double> x_axis,
                  std::span<const double> p_axis);
double wigner_at(const CMatrix& rho, double x, double p);

/// Equally spaced axis with n points on [lo, hi].
std::vector<double> linspace(double lo, double hi, int n);

void write_wigner_csv(const WignerGrid& grid, std::ostream& os);
/// gnuplot "matrix nonuniform" layout: first row holds the x axis, every
/// following row starts with p.
void write_wigner_matrix(const WignerGrid& grid, std::ostream& os);

/// Radial/Fourier decomposition of W used for polar evaluation:
/// W(r, phi) = sum_m Re(c_m(r) exp(i m phi)).
class PolarWigner {
 public:
  PolarWigner(const CMatrix& rho, std::span<const double> radii);
  double operator()(std::size_t radius_index, double phi) const;
  std::size_t radii() const noexcept { return r_.size(); }
  double radius(std::size_t i) const { return r_[i]; }
  /// Evaluates at an arbitrary radius (recomputes the kernel).
  static double at(const CMatrix& rho, double r, double phi);

 private:
  std::vector<double> r_;
  int dim_;
  std::vector<Complex> coeff_;  // coeff_[i * dim + m]
};

struct PolarGridSpec {
  int n_r = 200;
  int n_phi = 256;
  double r_max = 0.0;  // 0: sqrt(2 <n>) + 4
};

struct WignerMaximum {
  double radius = 0.0;
  double phi = 0.0;
  double value = 0.0;
};

/// Global maximum of W on a polar grid, refined by parabolic interpolation
/// around the best grid point. Ties resolve to the smallest radius, then the
/// smallest angle.
WignerMaximum wigner_max_radius(const CMatrix& rho, const PolarGridSpec& spec = {});

/// |sum_n rho_{n,n-1}|.
double s_q(const CMatrix& rho);
/// Re(<a>) / |<a>|; throws UndefinedMeasureError when |<a>| <= 1e-12.
double s_q_alter1(const CMatrix& rho);

struct PhaseDistribution {
  std::vector<double> phi;
  std::vector<double> values;
};

/// P(phi) = (1/2pi) sum_{k,l} exp(-i (k-l) phi) rho_kl on n_phi points.
PhaseDistribution phase_probability(const CMatrix& rho, int n_phi = 256);
double phase_probability_at(const CMatrix& rho, double phi);
/// 2 pi max P - 1, the grid maximum refined by golden-section search.
double s_q_alter2(const CMatrix& rho, int n_phi = 256);
void write_phase_csv(const PhaseDistribution& dist, std::ostream& os);

/// Trapezoid average of samples over [t_ref, t_ref + period]; needs at least
/// 32 samples inside the window.
double period_average(std::span<const double> t, std::span<const double> values,
                      double t_ref, double period);

using RecordSelector = std::function<double(const ObservableRecord&)>;
double period_average(const Trajectory& traj, double t_ref, double period,
                      const RecordSelector& select);

/// Mean of |R(t) - R0| / R0 over equally spaced samples covering one period.
double deformation_from_radii(std::span<const double> radii, double r_undriven);

/// D-bar from trajectory snapshots at t_ref + j period / samples.
double deformation(const Trajectory& driven, double r_undriven, double t_ref, double period,
                   const PolarGridSpec& grid = {}, int samples = 32);

}  // namespace rvdp
