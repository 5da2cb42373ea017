#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rvdp/fock.hpp"

namespace rvdp {

enum class Regime { Classical, Transition, Quantum };
enum class OscillatorType { R, R_RvdP, RvdP, RvdP_vdP, vdP };

/// One cell of the non-linear damping table at a given eps.
struct ParameterSet {
  std::string name;  // e.g. "quantum-R-eps0.1"
  char label;        // 'a' .. 'o'
  Regime regime;
  OscillatorType type;
  SystemParams params;  // Omega = 0, Delta = 0
  int default_dim;
};

/// gamma1_plus = 1/5 and gamma1_minus = 0 (eps = 1/5) or 1/10 (eps = 1/10).
SystemParams base_rates(double epsilon);

/// All 30 sets (15 cells times eps in {1/5, 1/10}), in table order.
const std::vector<ParameterSet>& parameter_sets();
std::optional<ParameterSet> find_parameter_set(const std::string& name);
const ParameterSet& parameter_set(Regime regime, OscillatorType type, double epsilon);

std::string to_string(Regime r);
std::string to_string(OscillatorType t);

}  // namespace rvdp
