#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "symmetry_checks.hpp"

using namespace hxyz;
using namespace testsupport;
using std::numbers::pi;

namespace {

const double r2 = 1 / std::sqrt(2.0);

double max_entry_diff(const CMatrix4& a, const CMatrix4& b) {
  double d = 0;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t k = 0; k < 4; ++k) d = std::max(d, std::abs(a(r, k) - b(r, k)));
  return d;
}

CMatrix4 permutation(SymmetryOp op) {
  CMatrix4 p;
  for (std::size_t i = 0; i < 4; ++i) {
    FourState e{Basis::uncoupled, {}};
    e.f[i] = 1;
    const auto m = map_state(op, e);
    for (std::size_t r = 0; r < 4; ++r) p(r, i) = m.f[r];
  }
  return p;
}

}  // namespace

TEST_CASE("parity") {
  CHECK(parity(BasisState::pp) == Parity::positive);
  CHECK(parity(BasisState::mm) == Parity::positive);
  CHECK(parity(BasisState::pm) == Parity::negative);
  CHECK(parity(BasisState::mp) == Parity::negative);
}

TEST_CASE("spin reflection commutes with the Hamiltonian") {
  std::mt19937_64 rng(1);
  const auto p = parity_operator();
  for (int i = 0; i < 50; ++i) {
    const auto h = hamiltonian_uncoupled(random_params(rng), 0.1 * i);
    CHECK(max_entry_diff(p * h, h * p) == 0.0);
  }
}

TEST_CASE("map_params_I_to_II") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_params(rng);
    const auto m = map_params_I_to_II(p);
    const auto twice = map_params_I_to_II(m);
    for (double t : {0.0, 0.7, 3.3}) {
      CHECK(evaluate(twice.lambda_m, t) == evaluate(p.lambda_m, t));
      CHECK(evaluate(twice.lambda_p, t) == evaluate(p.lambda_p, t));
      CHECK(evaluate(twice.lambda_z, t) == evaluate(p.lambda_z, t));
      CHECK(evaluate(twice.omega_plus, t) == evaluate(p.omega_plus, t));
      CHECK(evaluate(twice.omega_minus, t) == evaluate(p.omega_minus, t));
      CHECK(evaluate(m.lambda_z, t) == -evaluate(p.lambda_z, t));
      const auto a = block(m, t, Subspace::I).h, b = block(p, t, Subspace::II).h;
      const auto c = block(m, t, Subspace::II).h, d = block(p, t, Subspace::I).h;
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t k = 0; k < 2; ++k) {
          CHECK(a(r, k) == b(r, k));
          CHECK(c(r, k) == d(r, k));
        }
    }
  }
}

TEST_CASE("state maps") {
  const FourState e0{Basis::uncoupled, {1, 0, 0, 0}};
  CHECK(map_state_global_flip(e0).f == CVector<4>{0, 1, 0, 0});
  const FourState bell{Basis::uncoupled, {r2, r2, 0, 0}};
  CHECK(map_state_global_flip(bell).f == bell.f);
  CHECK(map_state_subspace_swap(e0).f == CVector<4>{0, 0, 1, 0});

  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto s = random_state(rng);
    for (auto op : {SymmetryOp::spin_reflection_xy, SymmetryOp::subspace_swap, SymmetryOp::global_flip}) {
      CHECK(max_diff(map_state(op, map_state(op, s)).f, s.f) <= 1e-15);
      const auto c = basis_convert(s, Basis::coupled);
      const auto mc = map_state(op, c);
      CHECK(mc.basis == Basis::coupled);
      CHECK(max_diff(basis_convert(mc, Basis::uncoupled).f, map_state(op, s).f) <= 1e-15);
    }
  }
}

TEST_CASE("symmetries conjugate the Hamiltonian") {
  std::mt19937_64 rng(4);
  for (auto op : {SymmetryOp::spin_reflection_xy, SymmetryOp::subspace_swap, SymmetryOp::global_flip}) {
    const auto s = permutation(op);
    for (int i = 0; i < 30; ++i) {
      const auto p = random_params(rng);
      const double t = 0.3 * i;
      CHECK(max_entry_diff(s * hamiltonian_uncoupled(p, t) * s.adjoint(), hamiltonian_uncoupled(map_params(op, p), t)) <=
            1e-15);
    }
  }
}

TEST_CASE("evolution commutes with the symmetries") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_params(rng);
    const auto s = random_state(rng);
    CHECK(commutation_error(SymmetryOp::subspace_swap, p, s) <= 1e-8);
    CHECK(commutation_error(SymmetryOp::global_flip, p, s) <= 1e-8);
    CHECK(commutation_error(SymmetryOp::spin_reflection_xy, p, s) <= 1e-8);
    CHECK(subspace_map_error(p, {s.f[0] / std::sqrt(std::norm(s.f[0]) + std::norm(s.f[1])),
                                 s.f[1] / std::sqrt(std::norm(s.f[0]) + std::norm(s.f[1]))}) <= 1e-8);
  }
}

TEST_CASE("concurrence is invariant under the global flip") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_state(rng);
    CHECK(std::abs(concurrence_pure(map_state_global_flip(s)) - concurrence_pure(s)) <= 1e-12);
  }
  const auto p = random_params(rng);
  const FourState psi = random_state(rng);
  const auto grid = uniform_grid(3, 31);
  const auto a = integrate_full(p, psi, grid, IntegratorConfig{});
  const auto b = integrate_full(flip_fields(p), map_state_global_flip(psi), grid, IntegratorConfig{});
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(std::abs(concurrence_pure({Basis::uncoupled, a.states[i]}) - concurrence_pure({Basis::uncoupled, b.states[i]})) <=
          1e-12);
}

TEST_CASE("ic2 mirror rule") {
  struct Case {
    double mu, beta, phi, kappa, theta;
  };
  for (const Case c : {Case{4, 10, pi / 50, 0.1, pi / 4}, Case{4, 50, 0, 0.1, 0}, Case{2, 10, 0.3, 0.2, 0.5},
                       Case{6, 10, pi / 50, 0.1, pi / 4}}) {
    Ic2Setup s;
    s.kappa = c.kappa;
    s.theta10 = c.theta;
    s.lambda_m = DriveProfile::sinusoid(c.mu, c.beta, c.phi);
    REQUIRE(ic2_admissible(s).valid);
    CHECK(ic2_mirror_error(s) <= 1e-9);
  }
}
