// simulate: command-line front end for the two-qubit XYZ solvers.
//
//   simulate run <config>        one trace
//   simulate sweep <config>      one trace per [sweep] value plus a summary
//   simulate figures <id>        run the checked-in preset <id>.cfg

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "hxyz/config.hpp"
#include "hxyz/errors.hpp"
#include "hxyz/runner.hpp"

#ifndef HXYZ_PRESET_DIR
#define HXYZ_PRESET_DIR "presets"
#endif

namespace fs = std::filesystem;

namespace {

int report(const std::exception& e, int code) {
  std::cerr << "simulate: " << e.what() << '\n';
  return code;
}

std::vector<std::string> preset_ids(const std::string& dir) {
  std::vector<std::string> ids;
  if (!fs::is_directory(dir)) return ids;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".cfg") ids.push_back(entry.path().stem().string());
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit time-dependent XYZ Heisenberg simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string output = ".";
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  double step = 0.0;
  std::string presets = HXYZ_PRESET_DIR;
  app.add_option("-o,--output", output, "Output directory")->capture_default_str();
  app.add_option("-j,--threads", threads, "Sweep worker threads")->check(CLI::PositiveNumber);
  app.add_option("--step", step, "Oracle step for numeric runs")->check(CLI::PositiveNumber);
  app.add_option("--presets", presets, "Preset directory")->capture_default_str();

  std::string config_path, figure_id;
  bool list = false;
  auto* run_cmd = app.add_subcommand("run", "Run a single configuration");
  run_cmd->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a configuration with a [sweep] section");
  sweep_cmd->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  auto* fig_cmd = app.add_subcommand("figures", "Run a figure preset");
  fig_cmd->add_option("id", figure_id, "Preset id, e.g. fig1c");
  fig_cmd->add_flag("--list", list, "List preset ids");

  CLI11_PARSE(app, argc, argv);

  try {
    std::string stem;
    if (fig_cmd->parsed()) {
      if (list) {
        for (const auto& id : preset_ids(presets)) std::cout << id << '\n';
        return 0;
      }
      if (figure_id.empty()) throw hxyz::ConfigError("figures needs a preset id (see --list)");
      config_path = (fs::path(presets) / (figure_id + ".cfg")).string();
      if (!fs::exists(config_path)) throw hxyz::ConfigError("no preset '" + figure_id + "' in " + presets);
      stem = figure_id;
    } else {
      stem = fs::path(config_path).stem().string();
    }

    const hxyz::RunConfig cfg = hxyz::build_run_config(hxyz::ConfigDocument::load(config_path));
    if (run_cmd->parsed() && cfg.sweep) throw hxyz::ConfigError("config has a [sweep] section; use 'simulate sweep'");
    if (sweep_cmd->parsed() && !cfg.sweep) throw hxyz::ConfigError("config has no [sweep] section");

    for (const auto& path : hxyz::execute(cfg, output, stem, threads, step)) std::cout << path << '\n';
  } catch (const hxyz::ConfigError& e) {
    return report(e, 2);
  } catch (const hxyz::AdmissibilityError& e) {
    return report(e, 3);
  } catch (const std::exception& e) {
    return report(e, 1);
  }
  return 0;
}
