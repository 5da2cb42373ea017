#pragma once

#include <filesystem>
#include <iosfwd>

#include "config.hpp"

namespace rvdp::cli {

/// Raised when an output file cannot be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Each command writes its files into `out` (created if missing) and a short
// human-readable report to `report`.
void command_evolve(const RunConfig& config, const std::filesystem::path& out, std::ostream& report);
void command_wigner(const RunConfig& config, const std::filesystem::path& out, std::ostream& report);
void command_sweep(const RunConfig& config, const std::filesystem::path& out, int workers,
                   std::ostream& report);
void command_spectrum(const RunConfig& config, const std::filesystem::path& out,
                      std::ostream& report);
void command_classical(const RunConfig& config, const std::filesystem::path& out,
                       std::ostream& report);
void command_perturb(const RunConfig& config, const std::filesystem::path& out,
                     std::ostream& report);

}  // namespace rvdp::cli
