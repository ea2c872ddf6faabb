#include "hxyz/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hxyz/entangle.hpp"
#include "hxyz/errors.hpp"

namespace hxyz {

namespace {

template <std::size_t N>
CVector<N> rhs(const CMatrix<N>& h, const CVector<N>& psi) {
  CVector<N> out = h * psi;
  for (auto& x : out) x *= -kI;
  return out;
}

template <std::size_t N>
CVector<N> axpy(const CVector<N>& y, double a, const CVector<N>& x) {
  CVector<N> out = y;
  for (std::size_t i = 0; i < N; ++i) out[i] += a * x[i];
  return out;
}

template <std::size_t N>
void rk4_step(const HamiltonianFn<N>& h, CVector<N>& psi, double t0, double t1) {
  const double dt = t1 - t0;
  const double tm = t0 + 0.5 * dt;
  const CMatrix<N> h0 = h(t0, Limit::from_right);
  const CMatrix<N> hm = h(tm, Limit::from_right);
  const CMatrix<N> h1 = h(t1, Limit::from_left);
  const CVector<N> k1 = rhs(h0, psi);
  const CVector<N> k2 = rhs(hm, axpy(psi, 0.5 * dt, k1));
  const CVector<N> k3 = rhs(hm, axpy(psi, 0.5 * dt, k2));
  const CVector<N> k4 = rhs(h1, axpy(psi, dt, k3));
  for (std::size_t i = 0; i < N; ++i) psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

template <std::size_t N>
Trace<N> run_fixed(const HamiltonianFn<N>& h, const CVector<N>& psi0, std::span<const double> times,
                   double step, std::span<const double> breakpoints) {
  Trace<N> trace;
  trace.times.assign(times.begin(), times.end());
  trace.states.reserve(times.size());

  // Every sample and breakpoint becomes a step boundary.
  std::vector<double> events(times.begin(), times.end());
  const double t_end = times.empty() ? 0.0 : times.back();
  for (double b : breakpoints)
    if (b > 0.0 && b < t_end) events.push_back(b);
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  const double n0 = norm_squared(psi0);
  CVector<N> psi = psi0;
  double t = 0.0;
  std::size_t next_sample = 0;
  for (double e : events) {
    if (e > t) {
      const auto n = static_cast<long>(std::ceil((e - t) / step - 1e-9));
      const double t_start = t;
      for (long i = 1; i <= n; ++i) {
        const double t_next = (i == n) ? e : t_start + (e - t_start) * static_cast<double>(i) / static_cast<double>(n);
        rk4_step(h, psi, t, t_next);
        t = t_next;
      }
    }
    while (next_sample < times.size() && times[next_sample] == e) {
      trace.states.push_back(psi);
      trace.max_norm_drift = std::max(trace.max_norm_drift, std::abs(norm_squared(psi) - n0));
      ++next_sample;
    }
  }
  return trace;
}

}  // namespace

template <std::size_t N>
Trace<N> integrate(const HamiltonianFn<N>& h, const CVector<N>& psi0, std::span<const double> times,
                   const IntegratorConfig& cfg, std::span<const double> breakpoints) {
  if (!(cfg.step > 0.0)) throw std::invalid_argument("integrate: step must be positive");
  if (!(cfg.norm_tolerance > 0.0)) throw std::invalid_argument("integrate: norm_tolerance must be positive");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || (i > 0 && times[i] < times[i - 1]))
      throw std::invalid_argument("integrate: sample times must be ascending and non-negative");
  }

  Trace<N> trace;
  if (cfg.method == IntegratorMethod::rk4_fixed) {
    trace = run_fixed(h, psi0, times, cfg.step, breakpoints);
  } else {
    const Trace<N> coarse = run_fixed(h, psi0, times, cfg.step, breakpoints);
    trace = run_fixed(h, psi0, times, 0.5 * cfg.step, breakpoints);
    for (std::size_t s = 0; s < times.size(); ++s)
      for (std::size_t i = 0; i < N; ++i)
        trace.error_estimate =
            std::max(trace.error_estimate, std::abs(trace.states[s][i] - coarse.states[s][i]) / 15.0);
  }
  if (trace.max_norm_drift > cfg.norm_tolerance)
    throw NormDrift("integrate: norm drift " + std::to_string(trace.max_norm_drift) + " exceeds tolerance " +
                    std::to_string(cfg.norm_tolerance));
  return trace;
}

template Trace<2> integrate<2>(const HamiltonianFn<2>&, const CVector<2>&, std::span<const double>,
                               const IntegratorConfig&, std::span<const double>);
template Trace<4> integrate<4>(const HamiltonianFn<4>&, const CVector<4>&, std::span<const double>,
                               const IntegratorConfig&, std::span<const double>);

double default_step(const ModelParams& params) {
  const auto freqs = params.frequencies();
  if (!freqs.empty()) {
    const double fastest = *std::max_element(freqs.begin(), freqs.end());
    return 2.0 * std::numbers::pi / fastest / 200.0;
  }
  const double scale = std::max(1.0, hamiltonian_uncoupled(params, 0.0).frobenius_norm());
  return 2.0 * std::numbers::pi / scale / 200.0;
}

double energy_limited_step(double step, double energy) {
  if (energy <= 0.0) return step;
  return std::min(step, 2.0 * std::numbers::pi / energy / 200.0);
}

Trace<2> integrate_block(const ModelParams& params, Subspace subspace, const BlockAmplitudes& initial,
                         std::span<const double> times, const IntegratorConfig& cfg) {
  const HamiltonianFn<2> h = [&params, subspace](double t, Limit) { return block(params, t, subspace).h; };
  return integrate<2>(h, initial.vec(), times, cfg);
}

Trace<4> integrate_full(const ModelParams& params, const FourState& initial, std::span<const double> times,
                        const IntegratorConfig& cfg) {
  const HamiltonianFn<4> h = [&params](double t, Limit) { return hamiltonian_uncoupled(params, t); };
  return integrate<4>(h, basis_convert(initial, Basis::uncoupled).f, times, cfg);
}

std::vector<double> uniform_grid(double t_end, std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("uniform_grid: need at least two samples");
  if (!(t_end >= 0.0)) throw std::invalid_argument("uniform_grid: t_end must be non-negative");
  std::vector<double> t(samples);
  for (std::size_t i = 0; i < samples; ++i)
    t[i] = t_end * static_cast<double>(i) / static_cast<double>(samples - 1);
  return t;
}

}  // namespace hxyz
