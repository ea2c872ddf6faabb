#pragma once

// Reference integrator for the time-dependent Schroedinger equation
// i d(psi)/dt = H(t) psi. Classical fixed-step RK4, no renormalization.

#include <algorithm>
#include <functional>
#include <span>
#include <vector>

#include "hxyz/linalg.hpp"
#include "hxyz/model.hpp"
#include "hxyz/state.hpp"

namespace hxyz {

template <std::size_t N>
using HamiltonianFn = std::function<CMatrix<N>(double t, Limit side)>;

enum class IntegratorMethod { rk4_fixed, rk4_doubling };

struct IntegratorConfig {
  double step = 1e-3;
  IntegratorMethod method = IntegratorMethod::rk4_fixed;
  double norm_tolerance = 1e-6;
};

template <std::size_t N>
struct Trace {
  std::vector<double> times;
  std::vector<CVector<N>> states;
  double max_norm_drift = 0.0;  // max |<psi|psi> - <psi0|psi0>| over samples
  double error_estimate = 0.0;  // step-doubling estimate; 0 for rk4_fixed
};

// Integrates from t = 0 and records the state at every entry of `times`
// (ascending, >= 0). Steps never straddle a breakpoint. Throws NormDrift when
// the drift exceeds cfg.norm_tolerance.
template <std::size_t N>
Trace<N> integrate(const HamiltonianFn<N>& h, const CVector<N>& psi0, std::span<const double> times,
                   const IntegratorConfig& cfg, std::span<const double> breakpoints = {});

extern template Trace<2> integrate<2>(const HamiltonianFn<2>&, const CVector<2>&, std::span<const double>,
                                      const IntegratorConfig&, std::span<const double>);
extern template Trace<4> integrate<4>(const HamiltonianFn<4>&, const CVector<4>&, std::span<const double>,
                                      const IntegratorConfig&, std::span<const double>);

// min(2 pi / beta) / 200 over the active drive frequencies; a model without
// sinusoidal drives falls back to resolving its largest t=0 energy scale.
double default_step(const ModelParams& params);

// Largest Frobenius norm of h(t) over `samples` uniform points of [0, t_end].
template <std::size_t N>
double max_energy(const HamiltonianFn<N>& h, double t_end, std::size_t samples = 4001) {
  double e = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = t_end * static_cast<double>(i) / static_cast<double>(samples - 1);
    e = std::max({e, h(t, Limit::from_left).frobenius_norm(), h(t, Limit::from_right).frobenius_norm()});
  }
  return e;
}

// `step` capped so that step * energy <= 2 pi / 200.
double energy_limited_step(double step, double energy);

Trace<2> integrate_block(const ModelParams& params, Subspace subspace, const BlockAmplitudes& initial,
                         std::span<const double> times, const IntegratorConfig& cfg);

// `initial` may be given in either basis; the trace is in the uncoupled basis.
Trace<4> integrate_full(const ModelParams& params, const FourState& initial, std::span<const double> times,
                        const IntegratorConfig& cfg);

std::vector<double> uniform_grid(double t_end, std::size_t samples);

}  // namespace hxyz
