#pragma once

#include <array>

#include "hxyz/linalg.hpp"
#include "hxyz/model.hpp"

namespace hxyz {

// x, y evolve from phi1(0), phi2(0) (subspace I); z, w from phi3(0), phi4(0).
enum class AmplitudeLabel { x, y, z, w };

// Amplitudes of a state inside one parity subspace: (|++>, |-->) for I,
// (|+->, |-+>) for II.
struct BlockAmplitudes {
  cplx a1{};
  cplx a2{};
  Subspace subspace = Subspace::I;
  AmplitudeLabel label = AmplitudeLabel::x;

  double norm_squared() const { return std::norm(a1) + std::norm(a2); }
  CVector<2> vec() const { return {a1, a2}; }
};

enum class Basis { uncoupled, coupled };

// Pure two-qubit state. Uncoupled amplitudes are (f++, f--, f+-, f-+);
// coupled amplitudes are (f1, f2, f3, f4) with f3, f4 the symmetric and
// antisymmetric combinations of |+-> and |-+>.
struct FourState {
  Basis basis = Basis::uncoupled;
  CVector<4> f{};

  double norm_squared() const { return hxyz::norm_squared(f); }
};

}  // namespace hxyz
