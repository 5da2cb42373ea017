#include "rvdp/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "rvdp/errors.hpp"

namespace rvdp {

using nlohmann::json;

DensityMatrix prepare_initial_state(const InitialState& init, const SystemParams& params, int dim) {
  switch (init.kind) {
    case InitialState::Kind::Coherent:
      return coherent_state(init.alpha, dim);
    case InitialState::Kind::Fock:
      return fock_state(init.fock, dim);
    case InitialState::Kind::Steady:
      break;
  }
  SteadyStateOptions so;
  so.dim = dim;
  return steady_state_undriven(params, Frame::laboratory(), so);
}

PointRecord evaluate_point(const SystemParams& params, const PointSettings& s,
                           const ObservableSet& obs, const DensityMatrix& initial,
                           double r_undriven) {
  PointRecord rec;
  rec.delta = params.detuning();
  rec.omega = params.drive_strength;
  try {
    params.validate();
    if (s.samples_per_period < 32) {
      throw InvalidParameterError("at least 32 samples per period are required");
    }
    const double period = 2.0 * std::numbers::pi / params.drive_frequency;
    const double periods = std::max(4.0, std::ceil(s.t_final / period - 1e-9));
    const double t_end = periods * period;
    rec.t_end = t_end;
    const Frame frame = Frame::rotating(params.drive_frequency);

    EvolveOptions eo;
    eo.t_final = t_end;
    eo.record_interval = period / s.samples_per_period;
    eo.snapshot_from = obs.d_bar ? t_end - period - 0.25 * eo.record_interval : t_end;
    eo.tolerances = s.tolerances;
    const Trajectory traj = evolve(initial, params, s.drive, frame, eo);
    rec.max_leakage = traj.max_leakage;
    rec.max_trace_drift = traj.max_trace_drift;
    rec.max_hermiticity = traj.max_hermiticity_residual;

    for (const auto& r : traj.records) {
      if (r.s_q < 0.0 || r.s_q > 1.0 + 1e-12) throw IntegrationAccuracyError("S_q left [0, 1]");
    }
    const double t_avg = t_end - period;
    if (obs.sq_bar) {
      rec.sq_bar = period_average(traj, t_avg, period, [](const ObservableRecord& r) { return r.s_q; });
    }
    if (obs.n_bar) {
      rec.n_bar = period_average(traj, t_avg, period, [](const ObservableRecord& r) { return r.number; });
    }
    if (obs.d_bar) {
      rec.d_bar = deformation(traj, r_undriven, t_avg, period, s.polar, s.deformation_samples);
    }
    if (obs.omega_obs) {
      const Liouvillian gen(params, s.drive, frame, initial.dim());
      const auto corr = correlation_from_state(gen, traj.states.back().matrix(), t_end,
                                               s.lag_t_max, s.lag_dt, s.tolerances);
      rec.omega_obs = broad_peak_location(power_spectrum(corr, s.spectrum),
                                          s.spectrum.smoothing_window);
    }
    // Stationarity is checked last so the averages are reported either way.
    rec.t_ref = detect_quasi_stationary(traj, period);
  } catch (const NotStationaryError& e) {
    rec.status = std::string("not-stationary: ") + e.what();
  } catch (const Error& e) {
    rec.status = e.what();
  }
  return rec;
}

void SweepSpec::validate() const {
  auto check = [](const std::vector<double>& axis, const char* name) {
    if (axis.empty()) throw InvalidParameterError(std::string(name) + " axis is empty");
    if (!std::is_sorted(axis.begin(), axis.end())) {
      throw InvalidParameterError(std::string(name) + " axis is not sorted");
    }
  };
  check(delta_axis, "detuning");
  check(omega_axis, "drive-strength");
  if (delta_axis.front() <= -1.0) throw InvalidParameterError("detuning must exceed -1");
  base.with_drive(0.0).validate();
}

std::vector<double> default_delta_axis() { return linspace(-0.3, 0.3, 21); }
std::vector<double> default_omega_axis() { return linspace(0.0, 0.6, 21); }

std::vector<std::size_t> SweepResult::failed() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!points[i].ok()) out.push_back(i);
  }
  return out;
}

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json to_json(const PointRecord& p) {
  return json{{"i_delta", p.i_delta},
              {"i_omega", p.i_omega},
              {"delta", p.delta},
              {"omega", p.omega},
              {"status", p.status},
              {"sq_bar", number_or_null(p.sq_bar)},
              {"n_bar", number_or_null(p.n_bar)},
              {"d_bar", number_or_null(p.d_bar)},
              {"omega_obs", number_or_null(p.omega_obs)},
              {"t_ref", number_or_null(p.t_ref)},
              {"t_end", p.t_end},
              {"max_leakage", p.max_leakage},
              {"max_trace_drift", p.max_trace_drift},
              {"max_hermiticity", p.max_hermiticity}};
}

PointRecord from_json(const json& j) {
  PointRecord p;
  p.i_delta = j.at("i_delta").get<std::size_t>();
  p.i_omega = j.at("i_omega").get<std::size_t>();
  p.delta = j.at("delta").get<double>();
  p.omega = j.at("omega").get<double>();
  p.status = j.at("status").get<std::string>();
  p.sq_bar = number_from(j.at("sq_bar"));
  p.n_bar = number_from(j.at("n_bar"));
  p.d_bar = number_from(j.at("d_bar"));
  p.omega_obs = number_from(j.at("omega_obs"));
  p.t_ref = number_from(j.at("t_ref"));
  p.t_end = j.at("t_end").get<double>();
  p.max_leakage = j.at("max_leakage").get<double>();
  p.max_trace_drift = j.at("max_trace_drift").get<double>();
  p.max_hermiticity = j.at("max_hermiticity").get<double>();
  return p;
}

void write_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write checkpoint " + tmp);
    out << text;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

std::string points_to_json(const std::vector<PointRecord>& points) {
  json arr = json::array();
  for (const auto& p : points) arr.push_back(to_json(p));
  return arr.dump(1);
}

std::vector<PointRecord> points_from_json(const std::string& text) {
  const json arr = json::parse(text);
  if (!arr.is_array()) throw Error("checkpoint is not a JSON array");
  std::vector<PointRecord> out;
  for (const auto& j : arr) out.push_back(from_json(j));
  return out;
}

SweepResult run_sweep(const SweepSpec& spec, int workers, const SweepProgress& progress) {
  spec.validate();
  if (workers < 1) throw InvalidParameterError("workers must be positive");
  const std::size_t nd = spec.delta_axis.size();
  const std::size_t total = nd * spec.omega_axis.size();

  SweepResult result;
  result.delta_axis = spec.delta_axis;
  result.omega_axis = spec.omega_axis;
  result.points.resize(total);
  std::vector<char> done(total, 0);

  const SystemParams base = spec.base.with_drive(0.0);
  const DensityMatrix initial =
      prepare_initial_state(spec.settings.initial, base, spec.settings.dim);
  if (spec.observables.d_bar) {
    SteadyStateOptions so;
    so.dim = spec.settings.dim;
    const DensityMatrix steady = steady_state_undriven(base, Frame::laboratory(), so);
    result.r_undriven = wigner_max_radius(steady.matrix(), spec.settings.polar).radius;
  }

  std::size_t completed = 0;
  if (!spec.checkpoint_path.empty() && std::filesystem::exists(spec.checkpoint_path)) {
    std::ifstream in(spec.checkpoint_path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    for (const auto& p : points_from_json(ss.str())) {
      if (p.i_delta >= nd || p.i_omega >= spec.omega_axis.size()) continue;
      if (p.delta != spec.delta_axis[p.i_delta] || p.omega != spec.omega_axis[p.i_omega]) continue;
      const std::size_t idx = p.i_omega * nd + p.i_delta;
      if (!done[idx]) {
        result.points[idx] = p;
        done[idx] = 1;
        ++completed;
      }
    }
  }

  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < total; ++i) {
    if (!done[i]) todo.push_back(i);
  }

  std::mutex mu;
  std::atomic<std::size_t> next{0};
  std::size_t since_checkpoint = 0;

  auto checkpoint_locked = [&]() {
    if (spec.checkpoint_path.empty()) return;
    std::vector<PointRecord> finished;
    for (std::size_t i = 0; i < total; ++i) {
      if (done[i]) finished.push_back(result.points[i]);
    }
    write_atomically(spec.checkpoint_path, points_to_json(finished));
  };

  auto work = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= todo.size()) return;
      const std::size_t idx = todo[k];
      const std::size_t i_d = idx % nd;
      const std::size_t i_o = idx / nd;
      const SystemParams p =
          base.with_detuning(spec.delta_axis[i_d]).with_drive(spec.omega_axis[i_o]);
      PointRecord rec = evaluate_point(p, spec.settings, spec.observables, initial, result.r_undriven);
      rec.i_delta = i_d;
      rec.i_omega = i_o;
      rec.delta = spec.delta_axis[i_d];
      rec.omega = spec.omega_axis[i_o];
      std::lock_guard lock(mu);
      result.points[idx] = std::move(rec);
      done[idx] = 1;
      ++completed;
      if (++since_checkpoint >= spec.checkpoint_interval) {
        checkpoint_locked();
        since_checkpoint = 0;
      }
      if (progress) progress(completed, total);
    }
  };

  const int n_threads = static_cast<int>(std::min<std::size_t>(workers, std::max<std::size_t>(1, todo.size())));
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(work);
  }
  {
    std::lock_guard lock(mu);
    checkpoint_locked();
  }
  return result;
}

void write_sweep_csv(const SweepResult& r, std::ostream& os) {
  os << "delta,omega,sq_bar,n_bar,d_bar,omega_obs,t_ref,max_leakage,max_trace_drift,status\n";
  char buf[320];
  for (const auto& p : r.points) {
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.12e,%.12e,%.12e,%.10g,%.10g,%.6e,%.6e,", p.delta,
                  p.omega, p.sq_bar, p.n_bar, p.d_bar, p.omega_obs, p.t_ref, p.max_leakage,
                  p.max_trace_drift);
    os << buf;
    std::string status = p.status;
    std::replace(status.begin(), status.end(), '"', '\'');
    os << '"' << status << "\"\n";
  }
}

std::string sweep_to_json(const SweepResult& r) {
  json j;
  j["delta_axis"] = r.delta_axis;
  j["omega_axis"] = r.omega_axis;
  j["r_undriven"] = number_or_null(r.r_undriven);
  json arr = json::array();
  for (const auto& p : r.points) arr.push_back(to_json(p));
  j["points"] = std::move(arr);
  return j.dump(1);
}

TongueMetrics tongue_metrics(const SweepResult& r) {
  const auto bad = r.failed();
  if (!bad.empty()) {
    std::ostringstream os;
    os << bad.size() << " grid points failed:";
    for (std::size_t i : bad) {
      const auto& p = r.points[i];
      os << " (delta=" << p.delta << ", omega=" << p.omega << ": " << p.status << ")";
    }
    throw IncompleteResultError(os.str());
  }
  TongueMetrics m;
  const std::size_t nd = r.delta_axis.size();
  const std::size_t no = r.omega_axis.size();
  for (const auto& p : r.points) {
    m.max_sq_bar = std::max(m.max_sq_bar, p.sq_bar);
    m.max_n_bar = std::max(m.max_n_bar, p.n_bar);
  }
  for (std::size_t i = 0; i < nd; ++i) {
    for (std::size_t j = 0; j < nd; ++j) {
      if (std::abs(r.delta_axis[i] + r.delta_axis[j]) > 1e-12) continue;
      for (std::size_t o = 0; o < no; ++o) {
        m.mirror_residual = std::max(m.mirror_residual, std::abs(r.at(i, o).sq_bar - r.at(j, o).sq_bar));
      }
    }
  }
  m.monotone_in_omega.assign(nd, true);
  for (std::size_t i = 0; i < nd; ++i) {
    for (std::size_t o = 1; o < no; ++o) {
      if (r.at(i, o).sq_bar < r.at(i, o - 1).sq_bar - 1e-5) m.monotone_in_omega[i] = false;
    }
  }
  double ms = 0.0, mn = 0.0;
  for (const auto& p : r.points) {
    ms += p.sq_bar;
    mn += p.n_bar;
  }
  ms /= static_cast<double>(r.points.size());
  mn /= static_cast<double>(r.points.size());
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (const auto& p : r.points) {
    sxy += (p.sq_bar - ms) * (p.n_bar - mn);
    sxx += (p.sq_bar - ms) * (p.sq_bar - ms);
    syy += (p.n_bar - mn) * (p.n_bar - mn);
  }
  m.sq_n_correlation = (sxx > 0.0 && syy > 0.0) ? sxy / std::sqrt(sxx * syy) : 0.0;
  return m;
}

}  // namespace rvdp
