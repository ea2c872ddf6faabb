#pragma once

// Run configuration. Text format:
//
//   # comment
//   [section]
//   key = value
//
// Sections: run, time, model.<profile>, ic1, ic2, rwa, rwa.drive,
// perturbation, perturbation.drive, sweep. Numeric values accept + - * /,
// parentheses, `pi` and `sqrt(...)`. Unknown sections and keys are errors.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hxyz/approx.hpp"
#include "hxyz/exact.hpp"
#include "hxyz/model.hpp"
#include "hxyz/oracle.hpp"
#include "hxyz/state.hpp"

namespace hxyz {

class ConfigDocument {
 public:
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
  };

  static ConfigDocument parse(const std::string& text);
  static ConfigDocument load(const std::string& path);

  const std::vector<Section>& sections() const { return sections_; }
  const Section* find(const std::string& section) const;
  std::optional<std::string> get(const std::string& section, const std::string& key) const;

  // `path` is <section>.<key>; the section is created if absent.
  void set(const std::string& path, const std::string& value);

  // Canonical text: one `[section]` line per section followed by its
  // `key = value` lines, in input order.
  std::string to_text() const;

 private:
  std::vector<Section> sections_;
};

double evaluate_expression(const std::string& text);

enum class Mode { ic1, ic2, rwa, perturbation, numeric };

struct TimeGrid {
  double t_end = 10.0;
  std::size_t samples = 4001;
};

struct PerturbationSetup {
  double omega_plus = 1.0;
  DriveProfile::Sinusoid drive;
};

struct SweepSpec {
  std::string parameter;  // <section>.<key>
  std::vector<std::string> values;
};

struct RunConfig {
  Mode mode = Mode::numeric;
  ConfigDocument source;

  TimeGrid time;
  std::optional<double> step;  // oracle step override
  IntegratorMethod method = IntegratorMethod::rk4_fixed;

  // ic1 and numeric. In ic1 mode lambda_m and lambda_p default to k omega_+
  // and k_second omega_-.
  ModelParams model;
  std::optional<Ic1Setup> ic1;
  std::optional<Ic2Setup> ic2;
  std::optional<RwaSetup> rwa;
  std::optional<PerturbationSetup> perturbation;

  // pp, mm, pm, mp, bell_s, bell_a, phi1..phi4 or custom.
  std::string initial = "pp";
  FourState custom;

  std::optional<SweepSpec> sweep;
};

// Throws ConfigError.
RunConfig build_run_config(const ConfigDocument& doc);

const char* mode_name(Mode m);

}  // namespace hxyz
