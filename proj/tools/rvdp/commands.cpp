#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

namespace rvdp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::ofstream open_out(const fs::path& path, bool binary = false) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) throw OutputError("cannot open " + path.string() + " for writing");
  os.precision(17);
  return os;
}

void finish(std::ofstream& os, const fs::path& path) {
  os.flush();
  if (!os) throw OutputError("failed writing " + path.string());
}

template <class Fn>
void write_file(const fs::path& path, Fn&& fn, bool binary = false) {
  auto os = open_out(path, binary);
  fn(os);
  finish(os, path);
}

void prepare_dir(const fs::path& out, const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw OutputError("cannot create " + out.string() + ": " + ec.message());
  write_file(out / "config.json", [&](std::ostream& os) { os << to_json(config).dump(2) << '\n'; });
}

void write_json(const fs::path& path, const json& j) {
  write_file(path, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
}

DensityMatrix initial_state(const RunConfig& c) {
  return prepare_initial_state(c.initial, c.params, c.dim);
}

EvolveOptions evolve_options(const RunConfig& c, double t_final) {
  EvolveOptions o;
  o.t_final = t_final;
  o.record_interval = c.evolve.record_interval;
  o.tolerances = c.tolerances;
  return o;
}

json diagnostics(const Trajectory& traj) {
  return {{"max_trace_drift", traj.max_trace_drift},
          {"max_leakage", traj.max_leakage},
          {"max_hermiticity_residual", traj.max_hermiticity_residual}};
}

}  // namespace

void command_evolve(const RunConfig& config, const fs::path& out, std::ostream& report) {
  config.validate();
  prepare_dir(out, config);
  const DensityMatrix rho0 = initial_state(config);
  EvolveOptions opt = evolve_options(config, config.evolve.t_final);
  const auto& snaps = config.evolve.snapshot_times;
  if (!snaps.empty()) opt.snapshot_from = *std::min_element(snaps.begin(), snaps.end());
  const Trajectory traj = evolve(rho0, config.params, config.drive, config.resolved_frame(), opt);

  write_file(out / "trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(traj, os); });

  if (!snaps.empty()) {
    Trajectory picked;
    picked.frame = traj.frame;
    for (double t : snaps) {
      picked.times.push_back(t);
      picked.states.push_back(traj.state_at(t));
    }
    if (config.evolve.binary_snapshots) {
      write_file(out / "snapshots.bin", [&](std::ostream& os) { write_snapshots_binary(picked, os); },
                 true);
    } else {
      write_file(out / "snapshots.csv", [&](std::ostream& os) {
        os << "t,k,l,re,im\n";
        for (std::size_t s = 0; s < picked.states.size(); ++s) {
          const CMatrix& m = picked.states[s].matrix();
          for (int k = 0; k < m.rows(); ++k) {
            for (int l = 0; l < m.cols(); ++l) {
              os << picked.times[s] << ',' << k << ',' << l << ',' << m(k, l).real() << ','
                 << m(k, l).imag() << '\n';
            }
          }
        }
      });
    }
  }

  const ObservableRecord& last = traj.records.back();
  json summary = {{"t_final", last.t},
                  {"number", last.number},
                  {"s_q", last.s_q},
                  {"re_a", last.a.real()},
                  {"im_a", last.a.imag()},
                  {"diagnostics", diagnostics(traj)}};
  write_json(out / "summary.json", summary);
  report << "evolve: t=" << last.t << " <n>=" << last.number << " S_q=" << last.s_q
         << " max trace drift=" << traj.max_trace_drift << " max leakage=" << traj.max_leakage
         << '\n';
}

void command_wigner(const RunConfig& config, const fs::path& out, std::ostream& report) {
  config.validate();
  prepare_dir(out, config);
  CMatrix rho;
  if (config.wigner.steady) {
    SteadyStateOptions so;
    so.dim = config.dim;
    so.tolerances = config.tolerances;
    rho = steady_state_undriven(config.params.with_drive(0.0), Frame::laboratory(), so).matrix();
  } else {
    const Trajectory traj = evolve(initial_state(config), config.params, config.drive,
                                   config.resolved_frame(),
                                   evolve_options(config, config.wigner.time));
    rho = traj.states.back().matrix();
  }

  const Expectations ex = expectations(rho);
  // Default extent covers the Fock levels holding all but 1e-6 of the population.
  int n_cover = 0;
  for (double tail = 1.0; n_cover < rho.rows() && tail > 1e-6; ++n_cover) {
    tail -= rho(n_cover, n_cover).real();
  }
  const double extent = config.wigner.extent > 0.0 ? config.wigner.extent
                                                   : std::sqrt(2.0 * n_cover + 1.0) + 4.0;
  const std::vector<double> axis = linspace(-extent, extent, config.wigner.points);
  const WignerGrid grid = wigner(rho, axis, axis);
  write_file(out / "wigner.csv", [&](std::ostream& os) { write_wigner_csv(grid, os); });
  write_file(out / "wigner.dat", [&](std::ostream& os) { write_wigner_matrix(grid, os); });
  const WignerMaximum wmax = wigner_max_radius(rho);

  json summary = {{"number", ex.number},
                  {"s_q", s_q(rho)},
                  {"norm_estimate", grid.norm_estimate},
                  {"max_radius", wmax.radius},
                  {"max_phi", wmax.phi},
                  {"max_value", wmax.value}};
  report << "wigner: <n>=" << ex.number << " norm=" << grid.norm_estimate
         << " max radius=" << wmax.radius << '\n';

  if (config.wigner.overlay) {
    try {
      const ClassicalParams cp = ClassicalParams::from_system(config.params.with_drive(0.0));
      LimitCycleOptions lo;
      lo.t_settle = config.classical.t_settle;
      lo.n_periods = config.classical.n_periods;
      const LimitCycle lc = extract_limit_cycle(cp, lo);
      write_file(out / "limit_cycle.csv",
                 [&](std::ostream& os) { write_classical_csv(lc.trajectory, os); });
      summary["classical_amplitude"] = lc.amplitude;
      report << "wigner: classical limit-cycle amplitude=" << lc.amplitude << '\n';
    } catch (const rvdp::Error& e) {
      summary["overlay_error"] = e.what();
      report << "wigner: no classical overlay (" << e.what() << ")\n";
    }
  }
  write_json(out / "summary.json", summary);
}

void command_sweep(const RunConfig& config, const fs::path& out, int workers,
                   std::ostream& report) {
  config.validate();
  prepare_dir(out, config);

  struct Job {
    std::string name;
    SystemParams params;
    int dim;
  };
  std::vector<Job> jobs;
  if (config.sweep.sets.empty()) {
    jobs.push_back({config.preset.empty() ? "sweep" : config.preset, config.params, config.dim});
  } else {
    for (const auto& name : config.sweep.sets) {
      const auto set = find_parameter_set(name);
      if (!set) throw ConfigError("unknown parameter set '" + name + "' in sweep.sets");
      jobs.push_back({set->name, set->params, set->default_dim});
    }
  }

  json summary = json::object();
  for (const auto& job : jobs) {
    SweepSpec spec;
    spec.base = job.params;
    spec.settings.dim = job.dim;
    spec.settings.drive = config.drive;
    spec.settings.initial = config.initial;
    spec.settings.t_final = config.sweep.t_final;
    spec.settings.samples_per_period = config.sweep.samples_per_period;
    spec.settings.tolerances = config.tolerances;
    spec.settings.lag_t_max = config.spectrum.t_max;
    spec.settings.lag_dt = config.spectrum.dt;
    spec.settings.spectrum.omega_min = config.spectrum.omega_min;
    spec.settings.spectrum.omega_max = config.spectrum.omega_max;
    spec.settings.spectrum.resolution = config.spectrum.resolution;
    spec.observables = config.sweep.observables;
    spec.delta_axis = config.sweep.delta_axis;
    spec.omega_axis = config.sweep.omega_axis;
    spec.checkpoint_path = (out / (job.name + ".checkpoint.json")).string();
    spec.checkpoint_interval = config.sweep.checkpoint_interval;
    try {
      spec.validate();
    } catch (const InvalidParameterError& e) {
      throw ConfigError(e.what());
    }

    const SweepResult result = run_sweep(spec, workers);
    write_file(out / (job.name + ".csv"), [&](std::ostream& os) { write_sweep_csv(result, os); });
    write_file(out / (job.name + ".json"),
               [&](std::ostream& os) { os << sweep_to_json(result) << '\n'; });

    json entry = {{"points", result.points.size()}, {"failed", result.failed().size()}};
    report << "sweep " << job.name << ": " << result.points.size() << " points, "
           << result.failed().size() << " failed";
    if (result.failed().empty() && config.sweep.observables.sq_bar &&
        config.sweep.observables.n_bar) {
      const TongueMetrics m = tongue_metrics(result);
      entry["max_sq_bar"] = m.max_sq_bar;
      entry["max_n_bar"] = m.max_n_bar;
      entry["mirror_residual"] = m.mirror_residual;
      entry["sq_n_correlation"] = m.sq_n_correlation;
      report << ", max S_q-bar=" << m.max_sq_bar << ", mirror residual=" << m.mirror_residual;
    }
    report << '\n';
    summary[job.name] = entry;
  }
  write_json(out / "summary.json", summary);
}

void command_spectrum(const RunConfig& config, const fs::path& out, std::ostream& report) {
  config.validate();
  prepare_dir(out, config);
  CorrelationOptions co;
  co.tau = config.spectrum.tau;
  co.t_max = config.spectrum.t_max;
  co.dt = config.spectrum.dt;
  co.tolerances = config.tolerances;
  const CorrelationRecord corr = correlation(config.params, config.drive, initial_state(config), co);
  SpectrumOptions so;
  so.omega_min = config.spectrum.omega_min;
  so.omega_max = config.spectrum.omega_max;
  so.resolution = config.spectrum.resolution;
  const Spectrum spec = power_spectrum(corr, so);

  write_file(out / "correlation.csv", [&](std::ostream& os) {
    os << "lag,re,im\n";
    for (std::size_t i = 0; i < corr.lags.size(); ++i) {
      os << corr.lags[i] << ',' << corr.values[i].real() << ',' << corr.values[i].imag() << '\n';
    }
  });
  write_file(out / "spectrum.csv", [&](std::ostream& os) {
    write_spectrum_csv(spec, os, config.spectrum.normalization, so.smoothing_window);
  });

  json summary = {{"tau", corr.tau},
                  {"number_at_tau", corr.number_at_tau},
                  {"quasi_stationary", corr.quasi_stationary},
                  {"spike_weight", spec.spike_weight},
                  {"imag_residue", spec.imag_residue},
                  {"conjugate_extension_exact", spec.conjugate_extension_exact}};
  report << "spectrum: tau=" << corr.tau << " spike weight=" << spec.spike_weight;
  try {
    const double w = broad_peak_location(spec, so.smoothing_window);
    summary["omega_obs"] = w;
    report << " omega_obs=" << w;
  } catch (const NoPeakError& e) {
    summary["omega_obs"] = nullptr;
    report << " omega_obs undefined (" << e.what() << ")";
  }
  report << '\n';
  write_json(out / "summary.json", summary);
}

void command_classical(const RunConfig& config, const fs::path& out, std::ostream& report) {
  config.validate();
  prepare_dir(out, config);
  const ClassicalParams undriven = ClassicalParams::from_system(config.params.with_drive(0.0));
  LimitCycleOptions lo;
  lo.t_settle = config.classical.t_settle;
  lo.n_periods = config.classical.n_periods;
  const LimitCycle lc = extract_limit_cycle(undriven, lo);
  const double predicted = limit_cycle_amplitude(undriven);
  write_file(out / "limit_cycle.csv",
             [&](std::ostream& os) { write_classical_csv(lc.trajectory, os); });

  json summary = {{"amplitude", lc.amplitude},
                  {"predicted_amplitude", predicted},
                  {"relative_difference", std::abs(lc.amplitude - predicted) / predicted},
                  {"period_amplitudes", lc.period_amplitudes}};
  report << "classical: extracted amplitude=" << lc.amplitude << " predicted=" << predicted
         << '\n';

  if (config.classical.t_final > 0.0) {
    const ClassicalParams cp = ClassicalParams::from_system(config.params);
    const int n = static_cast<int>(std::floor(config.classical.t_final / config.classical.sample_dt));
    std::vector<double> times(n + 1);
    for (int i = 0; i <= n; ++i) times[i] = i * config.classical.sample_dt;
    const auto samples =
        integrate_classical(cp, {config.classical.x0, config.classical.v0}, times);
    write_file(out / "trajectory.csv",
               [&](std::ostream& os) { write_classical_csv(samples, os); });
    summary["driven_samples"] = samples.size();
  }
  write_json(out / "summary.json", summary);
}

void command_perturb(const RunConfig& config, const fs::path& out, std::ostream& report) {
  config.validate();
  prepare_dir(out, config);
  const FirstOrder fo = first_order_state(config.params, config.dim);
  write_file(out / "perturbation.csv", [&](std::ostream& os) { write_first_order_csv(fo, os); });
  write_json(out / "summary.json", {{"chi_re", fo.chi.real()},
                                    {"chi_im", fo.chi.imag()},
                                    {"residual", fo.residual},
                                    {"condition", fo.condition}});
  report << "perturb: chi=" << fo.chi.real() << (fo.chi.imag() < 0 ? " - " : " + ")
         << std::abs(fo.chi.imag()) << "i residual=" << fo.residual << '\n';
}

}  // namespace rvdp::cli
