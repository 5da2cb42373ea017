#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

namespace {

enum ExitCode {
  kOk = 0,
  kConfig = 2,
  kTruncation = 3,
  kConvergence = 4,
  kOther = 5,
  kOutput = 6,
};

rvdp::cli::RunConfig load_config(const std::string& path, const std::string& preset,
                                 const std::vector<std::string>& overrides) {
  using rvdp::cli::ConfigError;
  rvdp::cli::RunConfig config;
  if (!preset.empty()) config = rvdp::cli::preset_config(preset);
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(path + ": " + e.what());
    }
    config = rvdp::cli::merge_json(config, j);
  }
  for (const auto& o : overrides) config = rvdp::cli::apply_override(config, o);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven Rayleigh-van der Pol oscillator simulator"};
  app.require_subcommand(1);

  std::string config_path, preset, out_dir = "out";
  std::vector<std::string> overrides;
  int workers = 1;

  const char* names[] = {"evolve", "wigner", "sweep", "spectrum", "classical", "perturb"};
  const char* help[] = {"integrate the master equation and write the trajectory",
                        "Wigner function of a steady or evolved state",
                        "Arnold-tongue parameter sweep",
                        "two-time correlation and power spectrum",
                        "classical limit cycle and driven trajectory",
                        "first-order response in the drive strength"};
  std::vector<CLI::App*> subs;
  for (int i = 0; i < 6; ++i) {
    CLI::App* s = app.add_subcommand(names[i], help[i]);
    s->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
    s->add_option("--preset", preset, "named preset (see presets-list)");
    s->add_option("--override", overrides, "KEY=VALUE with a dotted key, repeatable");
    s->add_option("--out", out_dir, "output directory")->capture_default_str();
    if (std::string(names[i]) == "sweep") {
      s->add_option("--workers", workers, "worker threads")->check(CLI::Range(1, 1024));
    }
    subs.push_back(s);
  }
  CLI::App* list = app.add_subcommand("presets-list", "list presets, or print one as JSON");
  list->add_option("--preset", preset, "print the resolved config of this preset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (list->parsed()) {
      if (preset.empty()) {
        for (const auto& p : rvdp::cli::list_presets()) {
          std::cout << p.name << '\t' << p.description << '\n';
        }
      } else {
        std::cout << rvdp::cli::to_json(rvdp::cli::preset_config(preset)).dump(2) << '\n';
      }
      return kOk;
    }
    const auto config = load_config(config_path, preset, overrides);
    if (subs[0]->parsed()) rvdp::cli::command_evolve(config, out_dir, std::cout);
    if (subs[1]->parsed()) rvdp::cli::command_wigner(config, out_dir, std::cout);
    if (subs[2]->parsed()) rvdp::cli::command_sweep(config, out_dir, workers, std::cout);
    if (subs[3]->parsed()) rvdp::cli::command_spectrum(config, out_dir, std::cout);
    if (subs[4]->parsed()) rvdp::cli::command_classical(config, out_dir, std::cout);
    if (subs[5]->parsed()) rvdp::cli::command_perturb(config, out_dir, std::cout);
  } catch (const rvdp::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const rvdp::InvalidParameterError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const rvdp::TruncationError& e) {
    std::cerr << "truncation error: " << e.what();
    if (e.suggested_dim() > 0) std::cerr << " (try dim=" << e.suggested_dim() << ")";
    std::cerr << '\n';
    return kTruncation;
  } catch (const rvdp::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << '\n';
    return kConvergence;
  } catch (const rvdp::IntegrationAccuracyError& e) {
    std::cerr << "integration error: " << e.what() << '\n';
    return kConvergence;
  } catch (const rvdp::NotStationaryError& e) {
    std::cerr << "convergence error: " << e.what() << '\n';
    return kConvergence;
  } catch (const rvdp::cli::OutputError& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kOutput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOk;
}
