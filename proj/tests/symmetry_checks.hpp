#pragma once

// Symmetry commutation checks shared by the unit tests and the acceptance
// binary.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hxyz/entangle.hpp"
#include "hxyz/exact.hpp"
#include "hxyz/oracle.hpp"
#include "hxyz/symmetry.hpp"
#include "support.hpp"

namespace testsupport {

inline hxyz::ModelParams random_params(std::mt19937_64& rng) {
  using hxyz::DriveProfile;
  std::uniform_real_distribution<double> u(-2, 2), f(0.5, 12);
  const auto pick = [&] {
    return DriveProfile::sum({DriveProfile::constant(u(rng)), DriveProfile::sinusoid(u(rng), f(rng), u(rng))});
  };
  hxyz::ModelParams p;
  p.lambda_p = pick();
  p.lambda_m = pick();
  p.lambda_z = pick();
  p.omega_plus = pick();
  p.omega_minus = pick();
  return p;
}

inline double max_diff(const hxyz::CVector<4>& a, const hxyz::CVector<4>& b) {
  double d = 0;
  for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// max over the grid of |S(evolve(p) psi) - evolve(S p)(S psi)|.
inline double commutation_error(hxyz::SymmetryOp op, const hxyz::ModelParams& p, const hxyz::FourState& psi,
                                double t_end = 5.0) {
  using namespace hxyz;
  const auto grid = uniform_grid(t_end, 51);
  IntegratorConfig cfg;
  cfg.step = 1e-3;
  const auto a = integrate_full(p, psi, grid, cfg);
  const auto b = integrate_full(map_params(op, p), map_state(op, psi), grid, cfg);
  double err = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const FourState ai{Basis::uncoupled, a.states[i]};
    err = std::max(err, max_diff(map_state(op, ai).f, b.states[i]));
  }
  return err;
}

// Subspace II evolved directly versus subspace I of the mapped parameters.
inline double subspace_map_error(const hxyz::ModelParams& p, const hxyz::CVector<2>& psi, double t_end = 5.0) {
  using namespace hxyz;
  const auto grid = uniform_grid(t_end, 51);
  IntegratorConfig cfg;
  cfg.step = 1e-3;
  BlockAmplitudes b;
  b.a1 = psi[0];
  b.a2 = psi[1];
  const auto two = integrate_block(p, Subspace::II, b, grid, cfg);
  const auto one = integrate_block(map_params_I_to_II(p), Subspace::I, b, grid, cfg);
  double err = 0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    err = std::max({err, std::abs(two.states[i][0] - one.states[i][0]), std::abs(two.states[i][1] - one.states[i][1])});
  return err;
}

// |C_--(theta10, kappa) - C_++(pi/2 - theta10, -kappa)| over t in [0, 10].
inline double ic2_mirror_error(const hxyz::Ic2Setup& s) {
  using namespace hxyz;
  Ic2Setup m = s;
  m.theta10 = std::numbers::pi / 2 - s.theta10;
  m.kappa = -s.kappa;
  double err = 0;
  for (int i = 0; i <= 1000; ++i) {
    const double t = 0.01 * i;
    err = std::max(err, std::abs(concurrence_ic2(InitialKind::mm, s, t) - concurrence_ic2(InitialKind::pp, m, t)));
  }
  return err;
}

}  // namespace testsupport
