#include "hxyz/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "hxyz/entangle.hpp"
#include "hxyz/errors.hpp"
#include "hxyz/oracle.hpp"

namespace hxyz {

namespace {

struct Angles {
  double theta10 = 0.0;
  double theta20 = 0.0;
};

Angles mixing_angles(const RunConfig& cfg) {
  if (cfg.ic1) return {cfg.ic1->theta10, cfg.ic1->theta20};
  if (cfg.ic2) return {cfg.ic2->theta10, cfg.ic2->theta20};
  if (cfg.rwa) return {cfg.rwa->theta10, 0.0};
  if (cfg.perturbation) return {};
  return {spectrum(cfg.model, 0.0, Subspace::I).theta, spectrum(cfg.model, 0.0, Subspace::II).theta};
}

FourState make(cplx a, cplx b, cplx c, cplx d) {
  FourState s;
  s.f = {a, b, c, d};
  return s;
}

double concurrence_of(const FourState& s, double norm) { return norm > 0.0 ? concurrence_pure(s) / norm : 0.0; }

void append(EvolutionTrace& tr, double t, const FourState& s) {
  const double n = s.norm_squared();
  tr.times.push_back(t);
  tr.states.push_back(s);
  tr.norm.push_back(n);
  tr.concurrence.push_back(concurrence_of(s, n));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

EvolutionTrace run_numeric(const RunConfig& cfg, const FourState& init, const std::vector<double>& grid,
                           double step_override) {
  IntegratorConfig ic;
  ic.method = cfg.method;
  const auto choose_step = [&](const HamiltonianFn<4>& h) {
    if (step_override > 0.0) return step_override;
    if (cfg.step) return *cfg.step;
    return energy_limited_step(default_step(cfg.model), max_energy<4>(h, grid.back()));
  };

  Trace<4> trace;
  if (cfg.ic2) {
    const Ic2Setup setup = *cfg.ic2;
    const HamiltonianFn<4> h = [setup](double t, Limit side) {
      const CMatrix2 a = ic2_block(setup, t, Subspace::I, side).h;
      const CMatrix2 b = ic2_block(setup, t, Subspace::II, side).h;
      CMatrix4 m;
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
          m(r, c) = a(r, c);
          m(r + 2, c + 2) = b(r, c);
        }
      return m;
    };
    const double t_end = grid.back();
    std::vector<double> bps = ic2_breakpoints(setup, t_end, Subspace::I);
    const auto more = ic2_breakpoints(setup, t_end, Subspace::II);
    bps.insert(bps.end(), more.begin(), more.end());
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    ic.step = choose_step(h);
    trace = integrate<4>(h, init.f, grid, ic, bps);
  } else {
    const ModelParams& model = cfg.model;
    ic.step = choose_step([&model](double t, Limit) { return hamiltonian_uncoupled(model, t); });
    trace = integrate_full(cfg.model, init, grid, ic);
  }
  EvolutionTrace out;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    FourState s;
    s.f = trace.states[i];
    append(out, trace.times[i], s);
  }
  return out;
}

}  // namespace

FourState initial_state(const RunConfig& cfg) {
  if (cfg.initial == "custom") return basis_convert(cfg.custom, Basis::uncoupled);
  const double r = 1.0 / std::sqrt(2.0);
  const Angles a = mixing_angles(cfg);
  const double c1 = std::cos(a.theta10), s1 = std::sin(a.theta10);
  const double c2 = std::cos(a.theta20), s2 = std::sin(a.theta20);
  const std::string& n = cfg.initial;
  if (n == "pp") return make(1, 0, 0, 0);
  if (n == "mm") return make(0, 1, 0, 0);
  if (n == "pm") return make(0, 0, 1, 0);
  if (n == "mp") return make(0, 0, 0, 1);
  if (n == "bell_s") return make(r, r, 0, 0);
  if (n == "bell_a") return make(r, -r, 0, 0);
  if (n == "phi1") return make(c1, s1, 0, 0);
  if (n == "phi2") return make(-s1, c1, 0, 0);
  if (n == "phi3") return make(0, 0, c2, s2);
  if (n == "phi4") return make(0, 0, -s2, c2);
  throw ConfigError("unknown initial state '" + n + "'");
}

EvolutionTrace run(const RunConfig& cfg, double step_override) {
  const std::vector<double> grid = uniform_grid(cfg.time.t_end, cfg.time.samples);
  const FourState init = initial_state(cfg);
  const auto& f = init.f;
  EvolutionTrace out;
  out.times.reserve(grid.size());

  switch (cfg.mode) {
    case Mode::ic1: {
      const Ic1Propagator prop(*cfg.ic1, cfg.model, cfg.time.t_end);
      const auto j1 = prop.rotation_angles(grid, Subspace::I);
      const auto j2 = prop.rotation_angles(grid, Subspace::II);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const FourState s = assemble_state(
            f[0], f[1], f[2], f[3], prop.evolve_with_angle(t, j1[i], Eigenstate::phi1),
            prop.evolve_with_angle(t, j1[i], Eigenstate::phi2), prop.evolve_with_angle(t, j2[i], Eigenstate::phi3),
            prop.evolve_with_angle(t, j2[i], Eigenstate::phi4), cfg.ic1->theta10, cfg.ic1->theta20);
        append(out, t, s);
      }
      return out;
    }
    case Mode::ic2: {
      const Ic2Setup& s = *cfg.ic2;
      for (double t : grid) {
        append(out, t,
               assemble_state(f[0], f[1], f[2], f[3], ic2_evolve(s, t, Eigenstate::phi1),
                              ic2_evolve(s, t, Eigenstate::phi2), ic2_evolve(s, t, Eigenstate::phi3),
                              ic2_evolve(s, t, Eigenstate::phi4), s.theta10, s.theta20));
      }
      return out;
    }
    case Mode::rwa: {
      const bool first = cfg.initial == "phi1";
      for (double t : grid) {
        const BlockAmplitudes x = first ? rwa_evolve(*cfg.rwa, t) : rwa_orthogonal(*cfg.rwa, t);
        append(out, t, make(x.a1, x.a2, 0, 0));
      }
      return out;
    }
    case Mode::perturbation: {
      const auto& p = *cfg.perturbation;
      for (double t : grid) append(out, t, make(perturb_x1(p.omega_plus, t), perturb_x2(p.omega_plus, p.drive, t), 0, 0));
      return out;
    }
    case Mode::numeric:
      return run_numeric(cfg, init, grid, step_override);
  }
  return out;
}

void write_trace_csv(std::ostream& os, const RunConfig& cfg, const EvolutionTrace& trace) {
  os << "# hxyz simulate trace\n";
  std::istringstream echo(cfg.source.to_text());
  for (std::string line; std::getline(echo, line);) os << "# " << line << '\n';
  os << "t,re_fpp,im_fpp,re_fmm,im_fmm,re_fpm,im_fpm,re_fmp,im_fmp,norm,concurrence\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    os << format_double(trace.times[i]);
    for (const cplx& a : trace.states[i].f) os << ',' << format_double(a.real()) << ',' << format_double(a.imag());
    os << ',' << format_double(trace.norm[i]) << ',' << format_double(trace.concurrence[i]) << '\n';
  }
}

double dominant_frequency(const std::vector<double>& times, const std::vector<double>& c) {
  if (c.size() < 2) return 0.0;
  const double duration = times.back() - times.front();
  if (duration <= 0.0) return 0.0;
  const double mean = std::accumulate(c.begin(), c.end(), 0.0) / static_cast<double>(c.size());
  int last = 0, crossings = 0;
  for (double v : c) {
    const double d = v - mean;
    const int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (sign == 0) continue;
    if (last != 0 && sign != last) ++crossings;
    last = sign;
  }
  return std::numbers::pi * crossings / duration;
}

SweepPoint summarize(const std::string& value_text, double value, const EvolutionTrace& trace) {
  SweepPoint p;
  p.value_text = value_text;
  p.value = value;
  if (trace.concurrence.empty()) return p;
  const auto [lo, hi] = std::minmax_element(trace.concurrence.begin(), trace.concurrence.end());
  p.peak = *hi;
  p.min = *lo;
  p.amplitude = 0.5 * (*hi - *lo);
  p.frequency = dominant_frequency(trace.times, trace.concurrence);
  return p;
}

SweepResult sweep(const RunConfig& cfg, unsigned threads, double step_override) {
  if (!cfg.sweep) throw ConfigError("config has no [sweep] section");
  const SweepSpec& spec = *cfg.sweep;
  if (spec.values.empty()) throw ConfigError("[sweep] values is empty");

  std::vector<std::pair<double, std::string>> values;
  for (const auto& v : spec.values) values.emplace_back(evaluate_expression(v), v);
  std::stable_sort(values.begin(), values.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i].first == values[i - 1].first) throw ConfigError("[sweep] duplicate value " + values[i].second);

  const std::size_t n = values.size();
  SweepResult result;
  result.points.resize(n);
  result.traces.resize(n);
  result.configs.resize(n);
  std::vector<std::exception_ptr> errors(n);

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        ConfigDocument doc = cfg.source;
        doc.set(spec.parameter, values[i].second);
        result.configs[i] = build_run_config(doc);
        result.traces[i] = run(result.configs[i], step_override);
        result.points[i] = summarize(values[i].second, values[i].first, result.traces[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < count; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return result;
}

void write_summary_csv(std::ostream& os, const RunConfig& cfg, const SweepResult& result) {
  os << "# hxyz simulate sweep summary\n";
  std::istringstream echo(cfg.source.to_text());
  for (std::string line; std::getline(echo, line);) os << "# " << line << '\n';
  os << "value,peak,min,amplitude,frequency\n";
  for (const auto& p : result.points) {
    os << format_double(p.value) << ',' << format_double(p.peak) << ',' << format_double(p.min) << ','
       << format_double(p.amplitude) << ',' << format_double(p.frequency) << '\n';
  }
}

std::vector<std::string> execute(const RunConfig& cfg, const std::string& dir, const std::string& stem,
                                 unsigned threads, double step_override) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  const auto open = [&](const std::string& name) {
    const std::string path = (fs::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    written.push_back(path);
    return out;
  };
  if (!cfg.sweep) {
    auto out = open(stem + ".csv");
    write_trace_csv(out, cfg, run(cfg, step_override));
    return written;
  }
  const SweepResult r = sweep(cfg, threads, step_override);
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    auto out = open(stem + "_" + std::to_string(i) + ".csv");
    write_trace_csv(out, r.configs[i], r.traces[i]);
  }
  auto out = open(stem + "_summary.csv");
  write_summary_csv(out, cfg, r);
  return written;
}

}  // namespace hxyz
