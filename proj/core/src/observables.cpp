#include "rvdp/observables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "rvdp/errors.hpp"

namespace rvdp {

namespace {

constexpr double kPi = std::numbers::pi;

// c_m(r) for m = 0..dim-1 such that W(r, phi) = sum_m Re(c_m exp(i m phi)).
void radial_coefficients(const CMatrix& rho, double r, Complex* c) {
  const int n = static_cast<int>(rho.rows());
  const double y = 2.0 * r * r;
  const double log_r = r > 0.0 ? std::log(std::sqrt(2.0) * r) : -std::numeric_limits<double>::infinity();
  for (int m = 0; m < n; ++m) {
    Complex acc{0.0};
    double l_prev = 0.0;
    double l_cur = 1.0;  // L_0^(m)
    for (int k = 0; k + m < n; ++k) {
      if (k == 1) {
        l_prev = l_cur;
        l_cur = 1.0 + m - y;
      } else if (k > 1) {
        const double next = ((2.0 * (k - 1) + 1.0 + m - y) * l_cur - (k - 1.0 + m) * l_prev) / k;
        l_prev = l_cur;
        l_cur = next;
      }
      double log_mag = 0.5 * (log_factorial(k) - log_factorial(k + m)) - r * r;
      if (m > 0) log_mag += m * log_r;
      const double w = ((k % 2 == 0) ? 1.0 : -1.0) / kPi * std::exp(log_mag) * l_cur;
      acc += rho(k, k + m) * w;
    }
    c[m] = (m == 0) ? Complex(acc.real(), 0.0) : 2.0 * acc;
  }
}

double evaluate_fourier(const Complex* c, int n, double phi) {
  double w = c[0].real();
  const Complex step = std::polar(1.0, phi);
  Complex e = step;
  for (int m = 1; m < n; ++m) {
    w += (c[m] * e).real();
    e *= step;
  }
  return w;
}

double trapezoid_weight(const std::vector<double>& axis, std::size_t i) {
  const std::size_t n = axis.size();
  if (n < 2) return 0.0;
  if (i == 0) return 0.5 * (axis[1] - axis[0]);
  if (i == n - 1) return 0.5 * (axis[n - 1] - axis[n - 2]);
  return 0.5 * (axis[i + 1] - axis[i - 1]);
}

// Vertex offset of the parabola through (-1, a), (0, b), (1, c), in [-1/2, 1/2].
double parabolic_offset(double a, double b, double c) {
  const double den = a - 2.0 * b + c;
  if (!(den < 0.0)) return 0.0;
  return std::clamp(0.5 * (a - c) / den, -0.5, 0.5);
}

}  // namespace

Expectations expectations(const CMatrix& rho) {
  Expectations e;
  const int n = static_cast<int>(rho.rows());
  for (int k = 0; k < n; ++k) {
    e.number += k * rho(k, k).real();
    if (k + 1 < n) e.a += std::sqrt(k + 1.0) * rho(k + 1, k);
  }
  e.x = std::sqrt(2.0) * e.a.real();
  e.p = std::sqrt(2.0) * e.a.imag();
  return e;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 2) throw InvalidParameterError("linspace needs at least two points");
  std::vector<double> v(static_cast<std::size_t>(n));
  const double h = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) v[i] = lo + i * h;
  v.back() = hi;
  return v;
}

double wigner_at(const CMatrix& rho, double x, double p) {
  return PolarWigner::at(rho, std::hypot(x, p), std::atan2(p, x));
}

WignerGrid wigner(const CMatrix& rho, std::span<const double> x_axis,
                  std::span<const double> p_axis) {
  if (rho.rows() != rho.cols()) throw ShapeError("density matrix must be square");
  WignerGrid g;
  g.x_axis.assign(x_axis.begin(), x_axis.end());
  g.p_axis.assign(p_axis.begin(), p_axis.end());
  const int n = static_cast<int>(rho.rows());
  g.values.resize(static_cast<Eigen::Index>(x_axis.size()),
                  static_cast<Eigen::Index>(p_axis.size()));
  std::vector<Complex> c(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < x_axis.size(); ++i) {
    for (std::size_t j = 0; j < p_axis.size(); ++j) {
      const double x = x_axis[i];
      const double p = p_axis[j];
      radial_coefficients(rho, std::hypot(x, p), c.data());
      g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          evaluate_fourier(c.data(), n, std::atan2(p, x));
    }
  }
  double norm = 0.0;
  for (std::size_t i = 0; i < x_axis.size(); ++i) {
    for (std::size_t j = 0; j < p_axis.size(); ++j) {
      norm += trapezoid_weight(g.x_axis, i) * trapezoid_weight(g.p_axis, j) *
              g.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  g.norm_estimate = norm;
  return g;
}

void write_wigner_csv(const WignerGrid& grid, std::ostream& os) {
  char buf[96];
  os << "x,p,W\n";
  for (std::size_t i = 0; i < grid.x_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.p_axis.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.12e\n", grid.x_axis[i], grid.p_axis[j],
                    grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      os << buf;
    }
  }
}

void write_wigner_matrix(const WignerGrid& grid, std::ostream& os) {
  char buf[64];
  os << grid.x_axis.size();
  for (double x : grid.x_axis) {
    std::snprintf(buf, sizeof buf, " %.10g", x);
    os << buf;
  }
  os << '\n';
  for (std::size_t j = 0; j < grid.p_axis.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.10g", grid.p_axis[j]);
    os << buf;
    for (std::size_t i = 0; i < grid.x_axis.size(); ++i) {
      std::snprintf(buf, sizeof buf, " %.12e",
                    grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      os << buf;
    }
    os << '\n';
  }
}

PolarWigner::PolarWigner(const CMatrix& rho, std::span<const double> radii)
    : r_(radii.begin(), radii.end()), dim_(static_cast<int>(rho.rows())) {
  coeff_.resize(r_.size() * static_cast<std::size_t>(dim_));
  for (std::size_t i = 0; i < r_.size(); ++i) {
    radial_coefficients(rho, r_[i], coeff_.data() + i * dim_);
  }
}

double PolarWigner::operator()(std::size_t i, double phi) const {
  return evaluate_fourier(coeff_.data() + i * dim_, dim_, phi);
}

double PolarWigner::at(const CMatrix& rho, double r, double phi) {
  std::vector<Complex> c(static_cast<std::size_t>(rho.rows()));
  radial_coefficients(rho, r, c.data());
  return evaluate_fourier(c.data(), static_cast<int>(rho.rows()), phi);
}

WignerMaximum wigner_max_radius(const CMatrix& rho, const PolarGridSpec& spec) {
  if (spec.n_r < 3 || spec.n_phi < 8) throw InvalidParameterError("polar grid too coarse");
  double r_max = spec.r_max;
  if (r_max <= 0.0) r_max = std::sqrt(2.0 * std::max(0.0, expectations(rho).number)) + 4.0;
  const auto radii = linspace(0.0, r_max, spec.n_r);
  const PolarWigner w(rho, radii);
  const double dphi = 2.0 * kPi / spec.n_phi;

  RMatrix grid(spec.n_r, spec.n_phi);
  for (int i = 0; i < spec.n_r; ++i) {
    for (int j = 0; j < spec.n_phi; ++j) grid(i, j) = w(static_cast<std::size_t>(i), j * dphi);
  }
  int bi = 0, bj = 0;
  double best = grid(0, 0);
  for (int i = 0; i < spec.n_r; ++i) {
    for (int j = 0; j < spec.n_phi; ++j) {
      if (grid(i, j) > best + 1e-13 * std::max(1.0, std::abs(best))) {
        best = grid(i, j);
        bi = i;
        bj = j;
      }
    }
  }
  WignerMaximum out;
  out.value = best;
  if (bi == 0) return out;  // origin: the angle is meaningless
  const int jm = (bj + spec.n_phi - 1) % spec.n_phi;
  const int jp = (bj + 1) % spec.n_phi;
  const double dj = parabolic_offset(grid(bi, jm), grid(bi, bj), grid(bi, jp));
  double di = 0.0;
  if (bi + 1 < spec.n_r) di = parabolic_offset(grid(bi - 1, bj), grid(bi, bj), grid(bi + 1, bj));
  const double dr = radii[1] - radii[0];
  out.radius = radii[bi] + di * dr;
  out.phi = std::fmod((bj + dj) * dphi + 2.0 * kPi, 2.0 * kPi);
  out.value = PolarWigner::at(rho, out.radius, out.phi);
  return out;
}

double s_q(const CMatrix& rho) {
  Complex s{0.0};
  for (Eigen::Index k = 1; k < rho.rows(); ++k) s += rho(k, k - 1);
  return std::abs(s);
}

double s_q_alter1(const CMatrix& rho) {
  const Complex a = expectations(rho).a;
  if (std::abs(a) <= 1e-12) {
    throw UndefinedMeasureError("phase of <a> is undefined for |<a>| <= 1e-12");
  }
  return a.real() / std::abs(a);
}

namespace {

std::vector<Complex> offset_sums(const CMatrix& rho) {
  const int n = static_cast<int>(rho.rows());
  std::vector<Complex> s(static_cast<std::size_t>(n), Complex{0.0});
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k + m < n; ++k) s[m] += rho(k, k + m);
  }
  return s;
}

double phase_density(const std::vector<Complex>& s, double phi) {
  double v = s[0].real();
  const Complex step = std::polar(1.0, phi);
  Complex e = step;
  for (std::size_t m = 1; m < s.size(); ++m) {
    v += 2.0 * (s[m] * e).real();
    e *= step;
  }
  return v / (2.0 * kPi);
}

}  // namespace

double phase_probability_at(const CMatrix& rho, double phi) {
  return phase_density(offset_sums(rho), phi);
}

PhaseDistribution phase_probability(const CMatrix& rho, int n_phi) {
  if (n_phi < 64) throw InvalidParameterError("phase grid needs at least 64 points");
  const auto s = offset_sums(rho);
  PhaseDistribution d;
  d.phi.resize(static_cast<std::size_t>(n_phi));
  d.values.resize(static_cast<std::size_t>(n_phi));
  for (int j = 0; j < n_phi; ++j) {
    d.phi[j] = 2.0 * kPi * j / n_phi;
    d.values[j] = phase_density(s, d.phi[j]);
  }
  return d;
}

double s_q_alter2(const CMatrix& rho, int n_phi) {
  const auto d = phase_probability(rho, n_phi);
  const auto s = offset_sums(rho);
  const auto it = std::max_element(d.values.begin(), d.values.end());
  const double h = 2.0 * kPi / n_phi;
  double lo = d.phi[static_cast<std::size_t>(it - d.values.begin())] - h;
  double hi = lo + 2.0 * h;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - g * (hi - lo);
  double e = lo + g * (hi - lo);
  double fc = phase_density(s, c);
  double fe = phase_density(s, e);
  for (int iter = 0; iter < 100 && hi - lo > 1e-13; ++iter) {
    if (fc > fe) {
      hi = e;
      e = c;
      fe = fc;
      c = hi - g * (hi - lo);
      fc = phase_density(s, c);
    } else {
      lo = c;
      c = e;
      fc = fe;
      e = lo + g * (hi - lo);
      fe = phase_density(s, e);
    }
  }
  const double best = std::max({*it, fc, fe});
  return 2.0 * kPi * best - 1.0;
}

void write_phase_csv(const PhaseDistribution& dist, std::ostream& os) {
  char buf[64];
  os << "phi,P\n";
  for (std::size_t j = 0; j < dist.phi.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12e\n", dist.phi[j], dist.values[j]);
    os << buf;
  }
}

double period_average(std::span<const double> t, std::span<const double> v, double t_ref,
                      double period) {
  if (t.size() != v.size()) throw ShapeError("time and value samples differ in length");
  if (!(period > 0.0)) throw InvalidParameterError("period must be positive");
  const double t_end = t_ref + period;
  const double slack = 1e-9 * std::max(1.0, std::abs(t_end));
  if (t.empty() || t.front() > t_ref + slack || t.back() < t_end - slack) {
    std::ostringstream os;
    os << "samples do not cover [" << t_ref << ", " << t_end << "]";
    throw SamplingError(os.str());
  }
  auto value_at = [&](double x) {
    auto it = std::lower_bound(t.begin(), t.end(), x);
    if (it == t.end()) return v.back();
    const std::size_t i = static_cast<std::size_t>(it - t.begin());
    if (i == 0 || *it == x) return v[i];
    const double w = (x - t[i - 1]) / (t[i] - t[i - 1]);
    return v[i - 1] + w * (v[i] - v[i - 1]);
  };
  std::vector<double> xs{t_ref};
  std::vector<double> ys{value_at(t_ref)};
  int inside = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] > t_ref + slack && t[i] < t_end - slack) {
      xs.push_back(t[i]);
      ys.push_back(v[i]);
    }
    if (t[i] >= t_ref - slack && t[i] <= t_end + slack) ++inside;
  }
  if (inside < 32) {
    std::ostringstream os;
    os << "only " << inside << " samples in the averaging window; 32 required";
    throw SamplingError(os.str());
  }
  xs.push_back(t_end);
  ys.push_back(value_at(t_end));
  double acc = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) acc += 0.5 * (xs[i] - xs[i - 1]) * (ys[i] + ys[i - 1]);
  return acc / period;
}

double period_average(const Trajectory& traj, double t_ref, double period,
                      const RecordSelector& select) {
  std::vector<double> t, v;
  t.reserve(traj.records.size());
  v.reserve(traj.records.size());
  for (const auto& r : traj.records) {
    t.push_back(r.t);
    v.push_back(select(r));
  }
  return period_average(t, v, t_ref, period);
}

double deformation_from_radii(std::span<const double> radii, double r_undriven) {
  if (!(r_undriven > 0.0)) {
    throw DegenerateLimitCycleError("undriven Wigner maximum sits at the origin (R = 0)");
  }
  if (radii.empty()) throw SamplingError("no radius samples");
  double acc = 0.0;
  for (double r : radii) acc += std::abs(r - r_undriven) / r_undriven;
  return acc / static_cast<double>(radii.size());
}

double deformation(const Trajectory& driven, double r_undriven, double t_ref, double period,
                   const PolarGridSpec& grid, int samples) {
  if (!(r_undriven > 0.0)) {
    throw DegenerateLimitCycleError("undriven Wigner maximum sits at the origin (R = 0)");
  }
  if (samples < 1) throw InvalidParameterError("deformation needs at least one sample");
  std::vector<double> radii;
  radii.reserve(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) {
    const double t = t_ref + period * j / samples;
    radii.push_back(wigner_max_radius(driven.state_at(t).matrix(), grid).radius);
  }
  return deformation_from_radii(radii, r_undriven);
}

}  // namespace rvdp
