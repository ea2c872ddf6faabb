#pragma once

#include <cmath>
#include <random>

#include "hxyz/linalg.hpp"
#include "hxyz/state.hpp"

namespace testsupport {

using hxyz::cplx;

inline double max_abs_diff(cplx a1, cplx a2, cplx b1, cplx b2) {
  return std::max(std::abs(a1 - b1), std::abs(a2 - b2));
}

inline hxyz::FourState random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  hxyz::FourState s;
  double n = 0.0;
  for (auto& f : s.f) {
    f = cplx(g(rng), g(rng));
    n += std::norm(f);
  }
  for (auto& f : s.f) f /= std::sqrt(n);
  return s;
}

// Haar-ish random 2x2 unitary from a normalized quaternion and a phase.
inline hxyz::CMatrix2 random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  double q[4];
  double n = 0.0;
  for (double& v : q) {
    v = g(rng);
    n += v * v;
  }
  n = std::sqrt(n);
  const cplx a(q[0] / n, q[1] / n), b(q[2] / n, q[3] / n);
  const cplx ph = std::polar(1.0, std::uniform_real_distribution<double>(0, 2 * M_PI)(rng));
  hxyz::CMatrix2 u;
  u(0, 0) = ph * a;
  u(0, 1) = ph * b;
  u(1, 0) = -ph * std::conj(b);
  u(1, 1) = ph * std::conj(a);
  return u;
}

}  // namespace testsupport
