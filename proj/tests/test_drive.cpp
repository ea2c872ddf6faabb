#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "hxyz/drive.hpp"
#include "hxyz/errors.hpp"

using namespace hxyz;
using std::numbers::pi;

TEST_CASE("evaluate") {
  const auto s = DriveProfile::sinusoid(2, 50, pi / 50);
  CHECK(evaluate(s, 0.0) == doctest::Approx(2 * std::sin(pi / 50)).epsilon(1e-15));
  CHECK(evaluate(s, 0.0) == doctest::Approx(0.12558).epsilon(1e-4));
  CHECK(evaluate(DriveProfile::sinusoid(3.7, 11, 0), 0.0) == 0.0);
  CHECK(evaluate(DriveProfile::scaled(0.5, s), 0.0) == doctest::Approx(0.06279).epsilon(1e-4));
  CHECK(evaluate(DriveProfile::scaled(0.5, s), 0.0) == doctest::Approx(0.5 * evaluate(s, 0.0)).epsilon(1e-15));
  CHECK(evaluate(DriveProfile::constant(-1.25), 7.0) == -1.25);
}

TEST_CASE("sinusoid needs a nonzero frequency") {
  CHECK_THROWS_AS(DriveProfile::sinusoid(1, 0), std::invalid_argument);
}

TEST_CASE("integral") {
  CHECK(integral(DriveProfile::sinusoid(1.3, 4, 0.2), 0.0) == 0.0);
  CHECK(integral(DriveProfile::constant(3), 2.0) == 6.0);
  CHECK(integral(DriveProfile::sinusoid(1, 1, 0), pi) == doctest::Approx(2.0).epsilon(1e-15));
  const auto sum = DriveProfile::sum({DriveProfile::constant(1), DriveProfile::sinusoid(1, 1, 0)});
  CHECK(integral(sum, pi) == doctest::Approx(pi + 2.0).epsilon(1e-15));
}

TEST_CASE("quadrature") {
  const auto sine = [](double t) { return std::sin(t); };
  CHECK(std::abs(quadrature(sine, 0, pi, 1e-10) - 2.0) <= 1e-10);
  CHECK(quadrature([](double) { return 1.0; }, 0, 5, 1e-12) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(std::abs(quadrature([](double t) { return std::abs(std::sin(t)); }, 0, 2 * pi, 1e-10) - 4.0) <= 1e-9);
  CHECK_THROWS_AS(quadrature([](double t) { return t < 0.3 ? 0.0 : 1e12; }, 0, 1, 1e-300, 5), NonConvergence);
}

namespace {

DriveProfile random_profile(std::mt19937_64& rng, int depth = 0) {
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_int_distribution<int> pick(0, depth > 1 ? 1 : 3);
  switch (pick(rng)) {
    case 0: return DriveProfile::constant(u(rng));
    case 1: return DriveProfile::sinusoid(u(rng), 0.5 + std::abs(u(rng)) * 10, u(rng));
    case 2: return DriveProfile::scaled(u(rng), random_profile(rng, depth + 1));
    default: return DriveProfile::sum({random_profile(rng, depth + 1), random_profile(rng, depth + 1)});
  }
}

}  // namespace

TEST_CASE("closed-form integral matches quadrature") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ut(0, 10);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_profile(rng);
    const double t = ut(rng);
    const double q = quadrature([&](double s) { return evaluate(p, s); }, 0, t, 1e-10);
    CHECK(std::abs(integral(p, t) - q) <= 1e-8 * (1 + t));
  }
}

TEST_CASE("integral differentiates to evaluate") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ut(0.1, 10);
  const double h = 1e-6;
  for (int i = 0; i < 200; ++i) {
    const auto p = random_profile(rng);
    const double t = ut(rng);
    const double fd = (integral(p, t + h) - integral(p, t - h)) / (2 * h);
    const double v = evaluate(p, t);
    CHECK(std::abs(fd - v) <= 1e-4 * std::max(1.0, std::abs(v)));
    const double dd = (evaluate(p, t + h) - evaluate(p, t - h)) / (2 * h);
    CHECK(std::abs(dd - derivative(p, t)) <= 1e-4 * std::max(1.0, std::abs(dd)));
  }
}

TEST_CASE("scaled stores a copy") {
  auto base = DriveProfile::sinusoid(2, 3, 0.1);
  const auto k = DriveProfile::scaled(0.5, base);
  const double before = evaluate(k, 0.7);
  base = DriveProfile::constant(100);
  CHECK(evaluate(k, 0.7) == before);
}

TEST_CASE("frequencies and predicates") {
  const auto s = DriveProfile::sum({DriveProfile::sinusoid(1, 4), DriveProfile::scaled(2, DriveProfile::sinusoid(1, -7))});
  const auto f = s.frequencies();
  REQUIRE(f.size() == 2);
  CHECK(f[0] == 4);
  CHECK(f[1] == 7);
  CHECK(DriveProfile::constant(0).is_zero());
  CHECK(DriveProfile::scaled(0, DriveProfile::sinusoid(1, 1)).is_zero());
  CHECK_FALSE(DriveProfile::sinusoid(1, 1).is_constant());
  CHECK(DriveProfile::scaled(3, DriveProfile::constant(1)).is_constant());
}
