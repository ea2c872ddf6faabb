#pragma once

// Solver dispatch for a RunConfig, CSV emission and parameter sweeps.

#include <iosfwd>
#include <string>
#include <vector>

#include "hxyz/config.hpp"
#include "hxyz/state.hpp"

namespace hxyz {

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<FourState> states;  // uncoupled basis
  std::vector<double> norm;
  std::vector<double> concurrence;
};

// Initial state in the uncoupled basis; phi1..phi4 use the mode's mixing
// angles at t = 0.
FourState initial_state(const RunConfig& cfg);

// `step_override` > 0 replaces the oracle step of numeric runs.
EvolutionTrace run(const RunConfig& cfg, double step_override = 0.0);

// Header lines start with '#' and echo the config; then a column line and
// one row per sample, values printed with %.17g.
void write_trace_csv(std::ostream& os, const RunConfig& cfg, const EvolutionTrace& trace);

struct SweepPoint {
  std::string value_text;
  double value = 0.0;
  double peak = 0.0;
  double min = 0.0;
  double amplitude = 0.0;  // (peak - min) / 2
  double frequency = 0.0;  // pi * zero crossings of (C - mean C) / duration
};

// pi * (sign changes of C - mean) / duration.
double dominant_frequency(const std::vector<double>& times, const std::vector<double>& c);

SweepPoint summarize(const std::string& value_text, double value, const EvolutionTrace& trace);

struct SweepResult {
  std::vector<SweepPoint> points;  // ascending by value
  std::vector<EvolutionTrace> traces;
  std::vector<RunConfig> configs;
};

// Runs each sweep value on up to `threads` workers. Points are sorted by
// value, so the result does not depend on the order of the value list.
SweepResult sweep(const RunConfig& cfg, unsigned threads, double step_override = 0.0);

void write_summary_csv(std::ostream& os, const RunConfig& cfg, const SweepResult& result);

// Writes <dir>/<stem>.csv for a plain run, or <dir>/<stem>_<i>.csv per sweep
// point plus <dir>/<stem>_summary.csv. Returns the paths written.
std::vector<std::string> execute(const RunConfig& cfg, const std::string& dir, const std::string& stem,
                                 unsigned threads, double step_override = 0.0);

}  // namespace hxyz
