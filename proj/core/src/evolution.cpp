#include "rvdp/evolution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <numbers>
#include <sstream>

#include <Eigen/SparseLU>

#include "rvdp/errors.hpp"

namespace rvdp {

ObservableRecord record_observables(double t, const CMatrix& rho) {
  ObservableRecord r;
  r.t = t;
  const int n = static_cast<int>(rho.rows());
  Complex tr{0.0}, a{0.0}, coh{0.0};
  double num = 0.0;
  for (int k = 0; k < n; ++k) {
    tr += rho(k, k);
    num += k * rho(k, k).real();
    if (k + 1 < n) {
      a += std::sqrt(k + 1.0) * rho(k + 1, k);
      coh += rho(k + 1, k);
    }
  }
  r.trace = tr.real();
  r.number = num;
  r.a = a;
  r.s_q = std::abs(coh);
  return r;
}

const DensityMatrix& Trajectory::state_at(double t) const {
  if (times.empty()) throw SamplingError("trajectory stores no snapshots");
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  std::size_t best = static_cast<std::size_t>(std::distance(times.begin(), it));
  if (best == times.size()) best = times.size() - 1;
  if (best > 0 && std::abs(times[best - 1] - t) < std::abs(times[best] - t)) --best;
  double tol = 1e-9;
  if (records.size() >= 2) tol = 0.5 * (records[1].t - records[0].t);
  if (std::abs(times[best] - t) > tol) {
    std::ostringstream os;
    os << "no snapshot stored near t=" << t;
    throw SamplingError(os.str());
  }
  return states[best];
}

Trajectory evolve(const DensityMatrix& rho0, const SystemParams& params, DriveModel drive,
                  Frame frame, const EvolveOptions& opt) {
  if (!(opt.t_final > opt.t_start)) {
    throw InvalidParameterError("t_final must exceed t_start");
  }
  const int n = rho0.dim();
  const Liouvillian gen(params, drive, frame, n);
  const auto times = uniform_times(opt.t_start, opt.t_final, opt.record_interval);
  const Tolerances& tol = opt.tolerances;

  Trajectory traj;
  traj.frame = frame;
  traj.records.reserve(times.size());

  auto observer = [&](double t, const CMatrix& rho) {
    ObservableRecord rec = record_observables(t, rho);
    const double drift = std::abs(rho.trace() - Complex(1.0, 0.0));
    const double leak = rho(n - 1, n - 1).real();
    const double herm = hermiticity_residual(rho);
    traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
    traj.max_leakage = std::max(traj.max_leakage, leak);
    traj.max_hermiticity_residual = std::max(traj.max_hermiticity_residual, herm);
    if (leak > tol.leakage) {
      const int suggested = n + std::max(4, n / 2);
      std::ostringstream os;
      os << "population " << leak << " in the top Fock level at t=" << t
         << " exceeds the leakage tolerance " << tol.leakage << "; increase dim to "
         << suggested << " or more";
      throw TruncationError(os.str(), suggested);
    }
    if (drift > tol.trace_drift) {
      std::ostringstream os;
      os << "trace drifted by " << drift << " at t=" << t
         << "; tighten the integrator tolerances";
      throw IntegrationAccuracyError(os.str());
    }
    if (herm > tol.hermiticity) {
      std::ostringstream os;
      os << "Hermiticity residual " << herm << " at t=" << t;
      throw IntegrationAccuracyError(os.str());
    }
    traj.records.push_back(rec);
    const bool last = t == times.back();
    if (t >= opt.snapshot_from || last) {
      traj.times.push_back(t);
      traj.states.emplace_back(rho, tol.trace_drift);
    }
  };

  StepControl control{tol.relative, tol.absolute, opt.initial_step, true};
  propagate(gen, rho0.matrix(), times, observer, control);
  return traj;
}

// ---------------------------------------------------------------------------
// Steady states

namespace {

DensityMatrix hermitian_unit_trace(const CMatrix& m) {
  CMatrix h = 0.5 * (m + m.adjoint());
  h /= h.trace().real();
  return DensityMatrix(std::move(h));
}

DensityMatrix steady_state_nullspace(const SystemParams& p0, Frame frame, int n) {
  const Liouvillian gen(p0, DriveModel::Rwa, frame, n);
  const bool diagonal_block = p0.beta == p0.delta;

  std::vector<std::pair<int, int>> block;
  std::vector<int> slot(static_cast<std::size_t>(n) * n, -1);
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k < n; ++k) {
      const bool in = diagonal_block ? (k == l) : ((k - l) % 2 == 0);
      if (in) {
        slot[static_cast<std::size_t>(l) * n + k] = static_cast<int>(block.size());
        block.emplace_back(k, l);
      }
    }
  }
  const int b = static_cast<int>(block.size());
  const int row = slot[0];
  std::vector<Eigen::Triplet<Complex>> entries;
  CMatrix basis = CMatrix::Zero(n, n);
  CMatrix image(n, n);
  for (int j = 0; j < b; ++j) {
    const auto [k, l] = block[j];
    basis(k, l) = 1.0;
    gen.apply(0.0, basis.data(), image.data());
    basis(k, l) = 0.0;
    for (int i = 0; i < b; ++i) {
      const auto [r, c] = block[i];
      if (i != row && image(r, c) != Complex{0.0}) entries.emplace_back(i, j, image(r, c));
    }
    // The trace functional is a left null vector of L0; the rho_00 equation
    // is replaced by the normalization condition.
    if (k == l) entries.emplace_back(row, j, 1.0);
  }
  Eigen::SparseMatrix<Complex> m(b, b);
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(b);
  rhs(row) = 1.0;
  Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
  lu.compute(m);
  if (lu.info() != Eigen::Success) {
    throw ConvergenceError("undriven generator has a degenerate steady-state space");
  }
  const Eigen::VectorXcd x = lu.solve(rhs);
  CMatrix rho = CMatrix::Zero(n, n);
  for (int j = 0; j < b; ++j) rho(block[j].first, block[j].second) = x(j);
  return hermitian_unit_trace(rho);
}

DensityMatrix steady_state_integration(const SystemParams& p0, Frame frame,
                                       const SteadyStateOptions& opt) {
  const int n = opt.dim;
  const Liouvillian gen(p0, DriveModel::Rwa, frame, n);
  // Generic start: a small coherent state that fits the truncation.
  Complex alpha0{0.6, 0.4};
  CMatrix rho;
  for (;;) {
    try {
      rho = coherent_state(alpha0, n, opt.tolerances.leakage).matrix();
      break;
    } catch (const TruncationError&) {
      alpha0 *= 0.5;
    }
  }
  const double period = 2.0 * std::numbers::pi / p0.drive_frequency;
  constexpr int kSamples = 32;
  // The per-period change can only fall below the convergence target when the
  // step error does.
  StepControl control{std::min(opt.tolerances.relative, opt.convergence),
                      std::min(opt.tolerances.absolute, 1e-2 * opt.convergence), 1e-3, true};

  Eigen::VectorXd prev_avg;
  CMatrix prev_state = rho;
  double t = 0.0;
  double last_change = std::numeric_limits<double>::infinity();
  while (t < opt.t_max) {
    const auto times = uniform_times(t, t + period, period / kSamples);
    Eigen::VectorXd avg = Eigen::VectorXd::Zero(n);
    double t_prev = times.front();
    Eigen::VectorXd d_prev = rho.diagonal().real();
    auto observer = [&](double tt, const CMatrix& x) {
      const double leak = x(n - 1, n - 1).real();
      if (leak > opt.tolerances.leakage) {
        throw TruncationError("steady-state search leaks into the top Fock level",
                              n + std::max(4, n / 2));
      }
      Eigen::VectorXd d = x.diagonal().real();
      if (tt > t_prev) avg += 0.5 * (tt - t_prev) * (d + d_prev);
      d_prev = d;
      t_prev = tt;
    };
    rho = propagate(gen, rho, times, observer, control);
    avg /= period;
    t += period;
    const double drift = std::abs(rho.trace() - Complex(1.0, 0.0));
    if (drift > opt.tolerances.trace_drift) {
      throw IntegrationAccuracyError("trace drift during steady-state integration");
    }
    if (prev_avg.size() == n) {
      const double d_avg = (avg - prev_avg).cwiseAbs().maxCoeff();
      const double d_state = (rho - prev_state).cwiseAbs().maxCoeff();
      last_change = std::max(d_avg, d_state);
      if (last_change < opt.convergence) return hermitian_unit_trace(rho);
    }
    prev_avg = avg;
    prev_state = rho;
  }
  std::ostringstream os;
  os << "steady state not reached by t=" << opt.t_max << " (last per-period change "
     << last_change << ")";
  throw ConvergenceError(os.str());
}

}  // namespace

DensityMatrix steady_state_undriven(const SystemParams& params, Frame frame,
                                    const SteadyStateOptions& options) {
  if (!frame.is_laboratory() && params.beta != params.delta) {
    throw UnsupportedConfigurationError(
        "undriven steady state in a rotating frame requires beta == delta");
  }
  const SystemParams p0 = params.with_drive(0.0);
  p0.validate();
  if (options.strategy == SteadyStateStrategy::Nullspace) {
    return steady_state_nullspace(p0, frame, options.dim);
  }
  return steady_state_integration(p0, frame, options);
}

// ---------------------------------------------------------------------------
// Quasi-stationarity

namespace {

// Cumulative trapezoid integral of samples (t_i, v_i).
std::vector<double> cumulative(const std::vector<double>& t, const std::vector<double>& v) {
  std::vector<double> c(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i) {
    c[i] = c[i - 1] + 0.5 * (t[i] - t[i - 1]) * (v[i] + v[i - 1]);
  }
  return c;
}

// Integral from t.front() to x using linear interpolation between samples.
double integral_to(const std::vector<double>& t, const std::vector<double>& v,
                   const std::vector<double>& c, double x) {
  auto it = std::upper_bound(t.begin(), t.end(), x);
  if (it == t.begin()) return 0.0;
  std::size_t i = static_cast<std::size_t>(std::distance(t.begin(), it)) - 1;
  if (i + 1 >= t.size()) return c.back();
  const double h = x - t[i];
  const double w = t[i + 1] - t[i];
  const double vx = v[i] + (v[i + 1] - v[i]) * (h / w);
  return c[i] + 0.5 * h * (v[i] + vx);
}

}  // namespace

double detect_quasi_stationary(const Trajectory& traj, double period, double rel_tol) {
  if (!(period > 0.0)) throw InvalidParameterError("period must be positive");
  const auto& recs = traj.records;
  if (recs.size() < 2) throw SamplingError("trajectory too short");
  std::vector<double> t(recs.size()), num(recs.size()), sq(recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    t[i] = recs[i].t;
    num[i] = recs[i].number;
    sq[i] = recs[i].s_q;
  }
  const auto c_num = cumulative(t, num);
  const auto c_sq = cumulative(t, sq);
  const double t_end = t.back();

  auto window_avg = [&](const std::vector<double>& v, const std::vector<double>& c,
                        double a) {
    return (integral_to(t, v, c, a + period) - integral_to(t, v, c, a)) / period;
  };

  double last_change = std::numeric_limits<double>::infinity();
  const double slack = 1e-9 * std::max(1.0, t_end);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double t0 = t[i];
    const auto windows = static_cast<int>(std::floor((t_end - t0) / period + 1e-9));
    if (windows < 3 || t0 + 3.0 * period > t_end + slack) break;
    double worst = 0.0;
    double prev_n = window_avg(num, c_num, t0);
    double prev_s = window_avg(sq, c_sq, t0);
    for (int j = 1; j < windows; ++j) {
      const double a = t0 + j * period;
      const double cur_n = window_avg(num, c_num, a);
      const double cur_s = window_avg(sq, c_sq, a);
      const double dn = std::abs(cur_n - prev_n) / std::max({std::abs(cur_n), std::abs(prev_n), 1.0});
      const double ds = std::abs(cur_s - prev_s) / std::max({std::abs(cur_s), std::abs(prev_s), 1.0});
      worst = std::max({worst, dn, ds});
      prev_n = cur_n;
      prev_s = cur_s;
      if (worst >= rel_tol) break;
    }
    if (i == 0 || worst < last_change) last_change = worst;
    if (worst < rel_tol) return t0;
  }
  std::ostringstream os;
  os << "quasi-stationary regime not reached; smallest relative change between periods "
     << last_change;
  throw NotStationaryError(os.str(), last_change);
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& os) {
  os << "t,trace,number,re_a,im_a,s_q\n";
  char buf[192];
  for (const auto& r : traj.records) {
    std::snprintf(buf, sizeof buf, "%.10g,%.15e,%.15e,%.15e,%.15e,%.15e\n", r.t, r.trace, r.number,
                  r.a.real(), r.a.imag(), r.s_q);
    os << buf;
  }
}

namespace {

template <class T>
void put_le(std::ostream& os, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

}  // namespace

void write_snapshots_binary(const Trajectory& traj, std::ostream& os) {
  put_le<std::int32_t>(os, static_cast<std::int32_t>(traj.states.size()));
  for (std::size_t s = 0; s < traj.states.size(); ++s) {
    const CMatrix& m = traj.states[s].matrix();
    put_le<double>(os, traj.times[s]);
    put_le<std::int32_t>(os, static_cast<std::int32_t>(m.rows()));
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
      for (Eigen::Index l = 0; l < m.cols(); ++l) {
        put_le<double>(os, m(k, l).real());
        put_le<double>(os, m(k, l).imag());
      }
    }
  }
}

}  // namespace rvdp
