#include "rvdp/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "rvdp/errors.hpp"

namespace rvdp {

namespace {

Complex trace_a(const CMatrix& b) {
  Complex s{0.0};
  for (Eigen::Index k = 0; k + 1 < b.rows(); ++k) s += std::sqrt(k + 1.0) * b(k + 1, k);
  return s;
}

std::vector<double> smooth(const std::vector<double>& v, int window) {
  const int n = static_cast<int>(v.size());
  const int h = std::max(0, window / 2);
  std::vector<double> out(v.size());
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - h);
    const int hi = std::min(n - 1, i + h);
    double s = 0.0;
    for (int j = lo; j <= hi; ++j) s += v[j];
    out[i] = s / (hi - lo + 1);
  }
  return out;
}

}  // namespace

CorrelationRecord correlation_from_state(const Liouvillian& gen, const CMatrix& rho_tau,
                                         double tau, double t_max, double dt,
                                         const Tolerances& tol) {
  if (!(dt > 0.0) || !(t_max > dt)) throw SamplingError("lag grid needs 0 < dt < t_max");
  const int n = gen.dim();
  const auto steps = static_cast<long>(std::llround(t_max / dt));
  std::vector<double> times(static_cast<std::size_t>(steps) + 1);
  for (long j = 0; j <= steps; ++j) times[static_cast<std::size_t>(j)] = tau + j * dt;

  CorrelationRecord rec;
  rec.tau = tau;
  rec.dt = dt;
  rec.number_at_tau = record_observables(tau, rho_tau).number;
  rec.conjugate_extension_exact = gen.time_independent();
  rec.lags.reserve(times.size());
  rec.values.reserve(times.size());

  const LadderOperators ops = build_ladder_operators(n);
  const CMatrix b0 = rho_tau * ops.creation;
  auto observer = [&](double t, const CMatrix& b) {
    rec.lags.push_back(t - tau);
    rec.values.push_back(trace_a(b));
  };
  // B carries no trace constraint; scale the absolute target with its norm.
  const double scale = std::max(1e-3, b0.cwiseAbs().maxCoeff());
  StepControl control{tol.relative, tol.absolute * scale, 1e-3};
  propagate(gen, b0, times, observer, control);

  const std::size_t tail = std::max<std::size_t>(1, rec.values.size() / 10);
  Complex acc{0.0};
  for (std::size_t i = rec.values.size() - tail; i < rec.values.size(); ++i) acc += rec.values[i];
  rec.asymptote = acc / static_cast<double>(tail);
  return rec;
}

CorrelationRecord correlation(const SystemParams& params, DriveModel drive,
                              const DensityMatrix& rho0, const CorrelationOptions& opt) {
  params.validate();
  const Frame frame = Frame::rotating(params.drive_frequency);
  CMatrix rho_tau = rho0.matrix();
  bool stationary = true;
  if (opt.tau > 0.0) {
    EvolveOptions eo;
    eo.t_final = opt.tau;
    eo.record_interval = opt.record_interval;
    eo.tolerances = opt.tolerances;
    const Trajectory traj = evolve(rho0, params, drive, frame, eo);
    rho_tau = traj.states.back().matrix();
    const double period = 2.0 * std::numbers::pi / params.drive_frequency;
    try {
      const double t_ref = detect_quasi_stationary(traj, period);
      stationary = t_ref + 3.0 * period <= opt.tau + 1e-9;
    } catch (const Error&) {
      stationary = false;
    }
  }
  const Liouvillian gen(params, drive, frame, rho0.dim());
  CorrelationRecord rec =
      correlation_from_state(gen, rho_tau, opt.tau, opt.t_max, opt.dt, opt.tolerances);
  rec.quasi_stationary = stationary;
  return rec;
}

Spectrum power_spectrum(const CorrelationRecord& corr, const SpectrumOptions& opt) {
  const std::size_t m = corr.values.size();
  if (m < 2 || corr.lags.size() != m) throw SamplingError("correlation record is empty");
  for (std::size_t j = 0; j < m; ++j) {
    if (std::abs(corr.lags[j] - j * corr.dt) > 1e-9 * std::max(1.0, corr.lags.back())) {
      throw SamplingError("correlation lags are not uniformly spaced");
    }
  }
  if (!(opt.resolution > 0.0) || !(opt.omega_max > opt.omega_min)) {
    throw InvalidParameterError("invalid frequency grid");
  }
  Spectrum s;
  s.tau = corr.tau;
  s.spike_weight = 2.0 * std::numbers::pi * std::abs(corr.asymptote);
  s.conjugate_extension_exact = corr.conjugate_extension_exact;

  std::vector<Complex> d(m);
  for (std::size_t j = 0; j < m; ++j) d[j] = corr.values[j] - corr.asymptote;

  const auto bins = static_cast<long>(std::llround((opt.omega_max - opt.omega_min) / opt.resolution));
  s.omega.resize(static_cast<std::size_t>(bins) + 1);
  s.values.resize(s.omega.size());
  double max_re = 0.0, max_im = 0.0;
  for (long b = 0; b <= bins; ++b) {
    const double w = opt.omega_min + b * opt.resolution;
    // Positive lags with exp(-i w t), negative lags with conj D and exp(+i w t).
    const Complex step = std::polar(1.0, -w * corr.dt);
    Complex e{1.0, 0.0};
    Complex pos{0.0}, neg{0.0};
    for (std::size_t j = 0; j < m; ++j) {
      const double weight = (j == 0 || j + 1 == m) ? 0.5 : 1.0;
      pos += weight * d[j] * e;
      neg += weight * std::conj(d[j]) * std::conj(e);
      e *= step;
    }
    const Complex total = (pos + neg) * corr.dt;
    s.omega[static_cast<std::size_t>(b)] = w;
    s.values[static_cast<std::size_t>(b)] = total.real();
    max_re = std::max(max_re, std::abs(total.real()));
    max_im = std::max(max_im, std::abs(total.imag()));
  }
  s.imag_residue = max_re > 0.0 ? max_im / max_re : max_im;
  return s;
}

double broad_peak_location(const Spectrum& spec, int window) {
  if (spec.values.size() < 3) throw NoPeakError("spectrum has too few bins");
  const auto sm = smooth(spec.values, window);
  std::size_t best = 0;
  for (std::size_t i = 1; i < sm.size(); ++i) {
    const double tol = 1e-12 * std::max(1.0, std::abs(sm[best]));
    if (sm[i] > sm[best] + tol ||
        (std::abs(sm[i] - sm[best]) <= tol && std::abs(spec.omega[i]) < std::abs(spec.omega[best]))) {
      best = i;
    }
  }
  std::vector<double> sorted = sm;
  const std::size_t mid = sorted.size() / 2;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(mid), sorted.end());
  const double median = sorted[mid];
  if (!(median > 0.0 ? sm[best] / median >= 1.5 : sm[best] > 0.0)) {
    std::ostringstream os;
    os << "no broad peak: max " << sm[best] << " vs median " << median;
    throw NoPeakError(os.str());
  }
  return spec.omega[best];
}

ParsevalCheck parseval_check(const CorrelationRecord& corr) {
  const std::size_t m = corr.values.size();
  if (m < 2) throw SamplingError("correlation record is empty");
  // Symmetric sequence D_j, j = -(m-1)..(m-1).
  const std::size_t len = 2 * m - 1;
  std::vector<Complex> seq(len);
  for (std::size_t j = 0; j < m; ++j) {
    const Complex dj = corr.values[j] - corr.asymptote;
    seq[m - 1 + j] = dj;
    seq[m - 1 - j] = std::conj(dj);
  }
  ParsevalCheck out;
  for (const auto& v : seq) out.lag_energy += std::norm(v);
  out.lag_energy *= corr.dt;
  // S_k = dt sum_j D_j exp(-i w_k t_j), w_k = 2 pi k / (len dt).
  double acc = 0.0;
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t k = 0; k < len; ++k) {
    const Complex step = std::polar(1.0, -two_pi * static_cast<double>(k) / static_cast<double>(len));
    Complex e = std::pow(step, -static_cast<double>(m - 1));
    Complex sum{0.0};
    for (std::size_t j = 0; j < len; ++j) {
      sum += seq[j] * e;
      e *= step;
    }
    acc += std::norm(sum * corr.dt);
  }
  const double dw = two_pi / (static_cast<double>(len) * corr.dt);
  out.spectral_energy = acc * dw / two_pi;
  return out;
}

void write_spectrum_csv(const Spectrum& spec, std::ostream& os, SpectrumNormalization norm,
                        int window) {
  double omega_obs = std::numeric_limits<double>::quiet_NaN();
  try {
    omega_obs = broad_peak_location(spec, window);
  } catch (const NoPeakError&) {
  }
  double scale = 1.0;
  if (norm == SpectrumNormalization::BroadPeakMax) {
    const auto sm = smooth(spec.values, window);
    const double peak = *std::max_element(sm.begin(), sm.end());
    if (peak > 0.0) scale = 1.0 / peak;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "# tau=%.10g\n# spike_weight=%.12e\n", spec.tau, spec.spike_weight);
  os << buf;
  std::snprintf(buf, sizeof buf, "# omega_obs=%.10g\n", omega_obs);
  os << buf;
  os << "# normalization=" << (norm == SpectrumNormalization::Raw ? "raw" : "broad-peak-max") << '\n';
  os << "# conjugate_extension_exact=" << (spec.conjugate_extension_exact ? "true" : "false") << '\n';
  os << "omega,S\n";
  for (std::size_t i = 0; i < spec.omega.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.10g,%.12e\n", spec.omega[i], spec.values[i] * scale);
    os << buf;
  }
}

}  // namespace rvdp
