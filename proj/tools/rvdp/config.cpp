#include "config.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rvdp::cli {

using nlohmann::json;

namespace {

void require_keys(const json& j, const char* section, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(std::string(section) + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return it.key() == k; });
    if (!known) {
      throw ConfigError("unknown key '" + it.key() + "' in " + section);
    }
  }
}

template <class T>
void read(const json& j, const char* key, T& out, const char* section) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(section) + "." + key + " has the wrong type");
  }
}

std::vector<double> read_axis(const json& j, const char* name) {
  if (j.is_array()) {
    std::vector<double> v;
    for (const auto& x : j) {
      if (!x.is_number()) throw ConfigError(std::string(name) + " entries must be numbers");
      v.push_back(x.get<double>());
    }
    return v;
  }
  if (j.is_object()) {
    require_keys(j, name, {"min", "max", "count"});
    if (!j.contains("min") || !j.contains("max") || !j.contains("count")) {
      throw ConfigError(std::string(name) + " needs min, max and count");
    }
    const int count = j.at("count").get<int>();
    if (count < 1) throw ConfigError(std::string(name) + ".count must be positive");
    if (count == 1) return {j.at("min").get<double>()};
    return linspace(j.at("min").get<double>(), j.at("max").get<double>(), count);
  }
  throw ConfigError(std::string(name) + " must be an array or {min, max, count}");
}

const char* drive_name(DriveModel d) { return d == DriveModel::Rwa ? "rwa" : "full"; }

const char* frame_name(FrameKind f) {
  switch (f) {
    case FrameKind::Laboratory: return "laboratory";
    case FrameKind::Drive: return "drive";
    case FrameKind::Rotating: return "rotating";
  }
  return "?";
}

json initial_json(const InitialState& s) {
  switch (s.kind) {
    case InitialState::Kind::Coherent:
      return {{"kind", "coherent"}, {"alpha", {s.alpha.real(), s.alpha.imag()}}};
    case InitialState::Kind::Fock:
      return {{"kind", "fock"}, {"n", s.fock}};
    case InitialState::Kind::Steady:
      break;
  }
  return {{"kind", "steady"}};
}

InitialState read_initial(const json& j) {
  require_keys(j, "initial", {"kind", "alpha", "n"});
  const std::string kind = j.value("kind", std::string("coherent"));
  if (kind == "steady") return InitialState::steady();
  if (kind == "fock") return InitialState::fock_state(j.value("n", 0));
  if (kind == "coherent") {
    Complex a{0.0};
    if (j.contains("alpha")) {
      const auto& v = j.at("alpha");
      if (v.is_number()) {
        a = v.get<double>();
      } else if (v.is_array() && v.size() == 2) {
        a = Complex(v[0].get<double>(), v[1].get<double>());
      } else {
        throw ConfigError("initial.alpha must be a number or [re, im]");
      }
    }
    return InitialState::coherent(a);
  }
  throw ConfigError("initial.kind must be coherent, fock or steady");
}

std::vector<std::string> observable_names(const ObservableSet& o) {
  std::vector<std::string> v;
  if (o.sq_bar) v.emplace_back("sq_bar");
  if (o.n_bar) v.emplace_back("n_bar");
  if (o.d_bar) v.emplace_back("d_bar");
  if (o.omega_obs) v.emplace_back("omega_obs");
  return v;
}

ObservableSet read_observables(const json& j) {
  if (!j.is_array()) throw ConfigError("sweep.observables must be an array");
  ObservableSet o{false, false, false, false};
  for (const auto& x : j) {
    const std::string name = x.get<std::string>();
    if (name == "sq_bar") o.sq_bar = true;
    else if (name == "n_bar") o.n_bar = true;
    else if (name == "d_bar") o.d_bar = true;
    else if (name == "omega_obs") o.omega_obs = true;
    else throw ConfigError("unknown observable '" + name + "'");
  }
  return o;
}

}  // namespace

Frame RunConfig::resolved_frame() const {
  switch (frame) {
    case FrameKind::Laboratory: return Frame::laboratory();
    case FrameKind::Drive: return Frame::rotating(params.drive_frequency);
    case FrameKind::Rotating: return Frame::rotating(frame_omega);
  }
  return Frame::laboratory();
}

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const rvdp::Error& e) {
    throw ConfigError(e.what());
  }
  if (dim < 2) throw ConfigError("dim must be at least 2");
  if (!(tolerances.relative > 0.0) || !(tolerances.absolute > 0.0)) {
    throw ConfigError("integrator tolerances must be positive");
  }
  if (!(evolve.t_final > 0.0) || !(evolve.record_interval > 0.0)) {
    throw ConfigError("evolve.t_final and evolve.record_interval must be positive");
  }
  if (wigner.points < 2) throw ConfigError("wigner.points must be at least 2");
  if (!(sweep.t_final > 0.0) || sweep.samples_per_period < 32) {
    throw ConfigError("sweep.t_final must be positive and samples_per_period >= 32");
  }
  if (sweep.checkpoint_interval < 1) throw ConfigError("sweep.checkpoint_interval must be >= 1");
  if (!(spectrum.dt > 0.0) || !(spectrum.t_max > spectrum.dt) || !(spectrum.resolution > 0.0) ||
      !(spectrum.omega_max > spectrum.omega_min) || spectrum.tau < 0.0) {
    throw ConfigError("invalid spectrum settings");
  }
  if (classical.n_periods < 2 || !(classical.sample_dt > 0.0)) {
    throw ConfigError("classical.n_periods must be >= 2 and sample_dt positive");
  }
}

json to_json(const RunConfig& c) {
  json j;
  j["preset"] = c.preset;
  j["params"] = {{"gamma1_plus", c.params.gamma1_plus}, {"gamma1_minus", c.params.gamma1_minus},
                 {"alpha", c.params.alpha},             {"beta", c.params.beta},
                 {"delta", c.params.delta},             {"drive_strength", c.params.drive_strength},
                 {"detuning", c.params.detuning()}};
  j["drive"] = drive_name(c.drive);
  j["frame"] = frame_name(c.frame);
  j["frame_omega"] = c.frame_omega;
  j["initial"] = initial_json(c.initial);
  j["dim"] = c.dim;
  j["tolerances"] = {{"relative", c.tolerances.relative},   {"absolute", c.tolerances.absolute},
                     {"trace_drift", c.tolerances.trace_drift}, {"leakage", c.tolerances.leakage},
                     {"hermiticity", c.tolerances.hermiticity}};
  j["evolve"] = {{"t_final", c.evolve.t_final},
                 {"record_interval", c.evolve.record_interval},
                 {"snapshot_times", c.evolve.snapshot_times},
                 {"binary_snapshots", c.evolve.binary_snapshots}};
  j["wigner"] = {{"steady", c.wigner.steady},   {"time", c.wigner.time},
                 {"extent", c.wigner.extent},   {"points", c.wigner.points},
                 {"overlay", c.wigner.overlay}};
  j["sweep"] = {{"sets", c.sweep.sets},
                {"delta_axis", c.sweep.delta_axis},
                {"omega_axis", c.sweep.omega_axis},
                {"observables", observable_names(c.sweep.observables)},
                {"t_final", c.sweep.t_final},
                {"samples_per_period", c.sweep.samples_per_period},
                {"checkpoint_interval", c.sweep.checkpoint_interval}};
  j["spectrum"] = {{"tau", c.spectrum.tau},
                   {"t_max", c.spectrum.t_max},
                   {"dt", c.spectrum.dt},
                   {"omega_min", c.spectrum.omega_min},
                   {"omega_max", c.spectrum.omega_max},
                   {"resolution", c.spectrum.resolution},
                   {"normalization", c.spectrum.normalization == SpectrumNormalization::Raw
                                         ? "raw"
                                         : "broad-peak-max"}};
  j["classical"] = {{"t_settle", c.classical.t_settle}, {"n_periods", c.classical.n_periods},
                    {"x0", c.classical.x0},             {"v0", c.classical.v0},
                    {"t_final", c.classical.t_final},   {"sample_dt", c.classical.sample_dt}};
  return j;
}

RunConfig merge_json(RunConfig c, const json& j) {
  require_keys(j, "config",
               {"preset", "params", "drive", "frame", "frame_omega", "initial", "dim",
                "tolerances", "evolve", "wigner", "sweep", "spectrum", "classical"});
  read(j, "preset", c.preset, "config");
  if (j.contains("params")) {
    const json& p = j.at("params");
    require_keys(p, "params",
                 {"gamma1_plus", "gamma1_minus", "alpha", "beta", "delta", "drive_strength",
                  "detuning"});
    read(p, "gamma1_plus", c.params.gamma1_plus, "params");
    read(p, "gamma1_minus", c.params.gamma1_minus, "params");
    read(p, "alpha", c.params.alpha, "params");
    read(p, "beta", c.params.beta, "params");
    read(p, "delta", c.params.delta, "params");
    read(p, "drive_strength", c.params.drive_strength, "params");
    if (p.contains("detuning")) {
      double d = 0.0;
      read(p, "detuning", d, "params");
      c.params.drive_frequency = 1.0 + d;
    }
  }
  if (j.contains("drive")) {
    const std::string d = j.at("drive").get<std::string>();
    if (d == "rwa") c.drive = DriveModel::Rwa;
    else if (d == "full") c.drive = DriveModel::Full;
    else throw ConfigError("drive must be 'rwa' or 'full'");
  }
  if (j.contains("frame")) {
    const std::string f = j.at("frame").get<std::string>();
    if (f == "laboratory") c.frame = FrameKind::Laboratory;
    else if (f == "drive") c.frame = FrameKind::Drive;
    else if (f == "rotating") c.frame = FrameKind::Rotating;
    else throw ConfigError("frame must be laboratory, drive or rotating");
  }
  read(j, "frame_omega", c.frame_omega, "config");
  if (j.contains("initial")) c.initial = read_initial(j.at("initial"));
  read(j, "dim", c.dim, "config");
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    require_keys(t, "tolerances", {"relative", "absolute", "trace_drift", "leakage", "hermiticity"});
    read(t, "relative", c.tolerances.relative, "tolerances");
    read(t, "absolute", c.tolerances.absolute, "tolerances");
    read(t, "trace_drift", c.tolerances.trace_drift, "tolerances");
    read(t, "leakage", c.tolerances.leakage, "tolerances");
    read(t, "hermiticity", c.tolerances.hermiticity, "tolerances");
  }
  if (j.contains("evolve")) {
    const json& e = j.at("evolve");
    require_keys(e, "evolve", {"t_final", "record_interval", "snapshot_times", "binary_snapshots"});
    read(e, "t_final", c.evolve.t_final, "evolve");
    read(e, "record_interval", c.evolve.record_interval, "evolve");
    read(e, "snapshot_times", c.evolve.snapshot_times, "evolve");
    read(e, "binary_snapshots", c.evolve.binary_snapshots, "evolve");
  }
  if (j.contains("wigner")) {
    const json& w = j.at("wigner");
    require_keys(w, "wigner", {"steady", "time", "extent", "points", "overlay"});
    read(w, "steady", c.wigner.steady, "wigner");
    read(w, "time", c.wigner.time, "wigner");
    read(w, "extent", c.wigner.extent, "wigner");
    read(w, "points", c.wigner.points, "wigner");
    read(w, "overlay", c.wigner.overlay, "wigner");
  }
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    require_keys(s, "sweep",
                 {"sets", "delta_axis", "omega_axis", "observables", "t_final",
                  "samples_per_period", "checkpoint_interval"});
    read(s, "sets", c.sweep.sets, "sweep");
    if (s.contains("delta_axis")) c.sweep.delta_axis = read_axis(s.at("delta_axis"), "sweep.delta_axis");
    if (s.contains("omega_axis")) c.sweep.omega_axis = read_axis(s.at("omega_axis"), "sweep.omega_axis");
    if (s.contains("observables")) c.sweep.observables = read_observables(s.at("observables"));
    read(s, "t_final", c.sweep.t_final, "sweep");
    read(s, "samples_per_period", c.sweep.samples_per_period, "sweep");
    read(s, "checkpoint_interval", c.sweep.checkpoint_interval, "sweep");
  }
  if (j.contains("spectrum")) {
    const json& s = j.at("spectrum");
    require_keys(s, "spectrum",
                 {"tau", "t_max", "dt", "omega_min", "omega_max", "resolution", "normalization"});
    read(s, "tau", c.spectrum.tau, "spectrum");
    read(s, "t_max", c.spectrum.t_max, "spectrum");
    read(s, "dt", c.spectrum.dt, "spectrum");
    read(s, "omega_min", c.spectrum.omega_min, "spectrum");
    read(s, "omega_max", c.spectrum.omega_max, "spectrum");
    read(s, "resolution", c.spectrum.resolution, "spectrum");
    if (s.contains("normalization")) {
      const std::string n = s.at("normalization").get<std::string>();
      if (n == "raw") c.spectrum.normalization = SpectrumNormalization::Raw;
      else if (n == "broad-peak-max") c.spectrum.normalization = SpectrumNormalization::BroadPeakMax;
      else throw ConfigError("spectrum.normalization must be raw or broad-peak-max");
    }
  }
  if (j.contains("classical")) {
    const json& s = j.at("classical");
    require_keys(s, "classical", {"t_settle", "n_periods", "x0", "v0", "t_final", "sample_dt"});
    read(s, "t_settle", c.classical.t_settle, "classical");
    read(s, "n_periods", c.classical.n_periods, "classical");
    read(s, "x0", c.classical.x0, "classical");
    read(s, "v0", c.classical.v0, "classical");
    read(s, "t_final", c.classical.t_final, "classical");
    read(s, "sample_dt", c.classical.sample_dt, "classical");
  }
  return c;
}

RunConfig from_json(const json& j) { return merge_json(RunConfig{}, j); }

// ---------------------------------------------------------------------------
// Presets

namespace {

RunConfig from_set(const ParameterSet& s) {
  RunConfig c;
  c.preset = s.name;
  c.params = s.params;
  c.dim = s.default_dim;
  return c;
}

RunConfig from_set_name(const std::string& name) { return from_set(*find_parameter_set(name)); }

const char* kTypes[] = {"R", "R-RvdP", "RvdP", "RvdP-vdP", "vdP"};
const char* kRows[] = {"classical", "transition", "quantum"};

struct FigurePreset {
  std::string name;
  std::string description;
  RunConfig (*build)(const std::string& name);
};

RunConfig fig2(const std::string& name) {
  // fig2a / fig2b / fig2c, optional "-brwa" suffix.
  const char letter = name[4];
  const std::string type = letter == 'a' ? "R" : letter == 'b' ? "RvdP" : "vdP";
  RunConfig c = from_set_name("quantum-" + type + "-eps0.1");
  c.preset = name;
  c.params.drive_strength = 0.3;
  c.initial = InitialState::coherent({0.75, 0.75});
  c.evolve.t_final = 200.0;
  c.evolve.record_interval = 0.05;
  if (name.size() > 5) c.drive = DriveModel::Full;
  return c;
}

RunConfig fig4(const std::string& name) {
  const std::string type = name.substr(5);
  RunConfig c = from_set_name("quantum-" + type + "-eps0.1");
  c.preset = name;
  c.params.drive_strength = 0.3;
  c.wigner.steady = false;
  c.wigner.time = 200.0;
  c.evolve.record_interval = 0.05;
  return c;
}

RunConfig tongue(const std::string& name) {
  // figF-rowR with F in {3, 5, 6}: S-bar, N-bar and D-bar maps of one table row.
  const char fig = name[3];
  const int row = name.back() - '1';
  RunConfig c = from_set_name(std::string(kRows[row]) + "-RvdP-eps0.1");
  c.preset = name;
  c.sweep.sets.clear();
  for (const char* t : kTypes) c.sweep.sets.push_back(std::string(kRows[row]) + "-" + t + "-eps0.1");
  c.initial = InitialState::steady();
  c.sweep.observables = ObservableSet{fig == '3', fig == '5', fig == '6', false};
  return c;
}

RunConfig fig7(const std::string& name) {
  const std::string set = name.substr(5) + "-eps0.1";
  RunConfig c = from_set_name(set);
  c.preset = name;
  c.params.drive_strength = 0.3;
  c.params.drive_frequency = 1.0 + 0.05;
  c.initial = InitialState::steady();
  return c;
}

RunConfig fig8(const std::string& name) {
  const std::string set = name.substr(5) + "-eps0.1";
  RunConfig c = from_set_name(set);
  c.preset = name;
  c.initial = InitialState::steady();
  c.sweep.sets = {set};
  c.sweep.delta_axis = {0.05};
  c.sweep.omega_axis = linspace(0.0, 0.3, 7);
  c.sweep.observables = ObservableSet{false, false, false, true};
  return c;
}

std::vector<FigurePreset> figure_presets() {
  std::vector<FigurePreset> v;
  const char* names2[] = {"a", "b", "c"};
  const char* types2[] = {"R", "RvdP", "vdP"};
  for (int i = 0; i < 3; ++i) {
    v.push_back({std::string("fig2") + names2[i],
                 std::string("quantum ") + types2[i] + " eps=0.1, Omega=0.3, Delta=0, RWA, coherent start",
                 fig2});
    v.push_back({std::string("fig2") + names2[i] + "-brwa",
                 std::string("as fig2") + names2[i] + " with the full (beyond-RWA) drive", fig2});
  }
  for (char fig : {'3', '5', '6'}) {
    const char* what = fig == '3' ? "S_q-bar" : fig == '5' ? "N-bar" : "D-bar";
    for (int row = 0; row < 3; ++row) {
      v.push_back({std::string("fig") + fig + "-row" + char('1' + row),
                   std::string(what) + " tongue sweeps for the " + kRows[row] + " row, eps=0.1", tongue});
    }
  }
  for (const char* t : types2) {
    v.push_back({std::string("fig4-") + t,
                 std::string("Wigner function of quantum ") + t + " at t=200, Omega=0.3", fig4});
  }
  for (const char* row : kRows) {
    for (const char* t : types2) {
      v.push_back({std::string("fig7-") + row + "-" + t,
                   std::string("power spectrum, ") + row + " " + t + ", Omega=0.3, Delta=0.05, tau=200",
                   fig7});
    }
  }
  for (const char* row : {"classical", "quantum"}) {
    v.push_back({std::string("fig8-") + row + "-RvdP",
                 std::string("omega_obs versus Omega at Delta=0.05, ") + row + " RvdP", fig8});
  }
  return v;
}

}  // namespace

std::vector<PresetInfo> list_presets() {
  std::vector<PresetInfo> out;
  for (const auto& s : parameter_sets()) {
    std::ostringstream os;
    os << "table cell (" << s.label << "), alpha=" << s.params.alpha << " beta=" << s.params.beta
       << " delta=" << s.params.delta << " gamma1+=" << s.params.gamma1_plus
       << " gamma1-=" << s.params.gamma1_minus << " dim=" << s.default_dim;
    out.push_back({s.name, os.str()});
  }
  for (const auto& f : figure_presets()) out.push_back({f.name, f.description});
  return out;
}

RunConfig preset_config(const std::string& name) {
  if (const auto s = find_parameter_set(name)) return from_set(*s);
  for (const auto& f : figure_presets()) {
    if (f.name == name) return f.build(name);
  }
  throw ConfigError("unknown preset '" + name + "' (see presets-list)");
}

RunConfig apply_override(const RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override must look like key=value: '" + assignment + "'");
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  // Build {"a": {"b": value}} from "a.b".
  std::vector<std::string> parts;
  std::stringstream ss(key);
  for (std::string part; std::getline(ss, part, '.');) {
    if (part.empty()) throw ConfigError("empty path segment in override '" + key + "'");
    parts.push_back(part);
  }
  json patch = value;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) patch = json{{*it, patch}};
  return merge_json(config, patch);
}

}  // namespace rvdp::cli
