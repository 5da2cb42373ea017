#include "rvdp/presets.hpp"

#include <cmath>

#include "rvdp/errors.hpp"

namespace rvdp {

namespace {

struct Cell {
  char label;
  Regime regime;
  OscillatorType type;
  double alpha, beta, delta;
};

constexpr Cell kCells[] = {
    {'a', Regime::Classical, OscillatorType::R, 0.0, 1.0 / 75, 2.0 / 75},
    {'b', Regime::Classical, OscillatorType::R_RvdP, 1.0 / 100, 1.0 / 150, 1.0 / 75},
    {'c', Regime::Classical, OscillatorType::RvdP, 1.0 / 50, 0.0, 0.0},
    {'d', Regime::Classical, OscillatorType::RvdP_vdP, 1.0 / 100, 1.0 / 50, 0.0},
    {'e', Regime::Classical, OscillatorType::vdP, 0.0, 1.0 / 25, 0.0},
    {'f', Regime::Transition, OscillatorType::R, 0.0, 1.0 / 10, 1.0 / 5},
    {'g', Regime::Transition, OscillatorType::R_RvdP, 3.0 / 40, 1.0 / 20, 1.0 / 10},
    {'h', Regime::Transition, OscillatorType::RvdP, 3.0 / 20, 0.0, 0.0},
    {'i', Regime::Transition, OscillatorType::RvdP_vdP, 3.0 / 40, 3.0 / 20, 0.0},
    {'j', Regime::Transition, OscillatorType::vdP, 0.0, 3.0 / 10, 0.0},
    {'k', Regime::Quantum, OscillatorType::R, 0.0, 8.0 / 15, 16.0 / 15},
    {'l', Regime::Quantum, OscillatorType::R_RvdP, 2.0 / 5, 4.0 / 15, 8.0 / 15},
    {'m', Regime::Quantum, OscillatorType::RvdP, 4.0 / 5, 0.0, 0.0},
    {'n', Regime::Quantum, OscillatorType::RvdP_vdP, 2.0 / 5, 4.0 / 5, 0.0},
    {'o', Regime::Quantum, OscillatorType::vdP, 0.0, 8.0 / 5, 0.0},
};

// Smallest round dimension keeping the undriven top-level population well
// below 1e-6. The vdP-type sets carry a slowly decaying population tail.
int default_dimension(Regime regime, OscillatorType type) {
  if (regime == Regime::Classical) return 40;
  if (type == OscillatorType::vdP) return regime == Regime::Quantum ? 60 : 40;
  return 20;
}

std::string eps_tag(double eps) { return eps > 0.15 ? "eps0.2" : "eps0.1"; }

std::vector<ParameterSet> build() {
  std::vector<ParameterSet> out;
  for (double eps : {0.2, 0.1}) {
    for (const Cell& c : kCells) {
      ParameterSet s;
      s.label = c.label;
      s.regime = c.regime;
      s.type = c.type;
      s.params = base_rates(eps);
      s.params.alpha = c.alpha;
      s.params.beta = c.beta;
      s.params.delta = c.delta;
      s.default_dim = default_dimension(c.regime, c.type);
      s.name = to_string(c.regime) + "-" + to_string(c.type) + "-" + eps_tag(eps);
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

SystemParams base_rates(double epsilon) {
  SystemParams p;
  p.gamma1_plus = 1.0 / 5;
  if (std::abs(epsilon - 0.2) < 1e-12) {
    p.gamma1_minus = 0.0;
  } else if (std::abs(epsilon - 0.1) < 1e-12) {
    p.gamma1_minus = 1.0 / 10;
  } else {
    throw InvalidParameterError("tabulated sets exist for eps = 0.2 and eps = 0.1 only");
  }
  return p;
}

const std::vector<ParameterSet>& parameter_sets() {
  static const std::vector<ParameterSet> sets = build();
  return sets;
}

std::optional<ParameterSet> find_parameter_set(const std::string& name) {
  for (const auto& s : parameter_sets()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

const ParameterSet& parameter_set(Regime regime, OscillatorType type, double epsilon) {
  const SystemParams base = base_rates(epsilon);
  for (const auto& s : parameter_sets()) {
    if (s.regime == regime && s.type == type && s.params.gamma1_minus == base.gamma1_minus) return s;
  }
  throw InvalidParameterError("unknown parameter set");
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Classical: return "classical";
    case Regime::Transition: return "transition";
    case Regime::Quantum: return "quantum";
  }
  return "?";
}

std::string to_string(OscillatorType t) {
  switch (t) {
    case OscillatorType::R: return "R";
    case OscillatorType::R_RvdP: return "R-RvdP";
    case OscillatorType::RvdP: return "RvdP";
    case OscillatorType::RvdP_vdP: return "RvdP-vdP";
    case OscillatorType::vdP: return "vdP";
  }
  return "?";
}

}  // namespace rvdp
