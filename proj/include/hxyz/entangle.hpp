#pragma once

// Concurrence of two-qubit states: the general Wootters construction, the
// pure-state shortcuts in both bases, and closed forms for states evolved
// under the integrability conditions.

#include "hxyz/exact.hpp"
#include "hxyz/linalg.hpp"
#include "hxyz/state.hpp"

namespace hxyz {

FourState basis_convert(const FourState& s, Basis target);

// 2|f++ f-- - f+- f-+| (uncoupled) or |2 f1 f2 - (f3^2 - f4^2)| (coupled),
// capped at 1.
double concurrence_pure(const FourState& s);

class DensityMatrix {
 public:
  // Validates Hermiticity, unit trace (1e-12) and eigenvalues >= -1e-10.
  // Coupled-basis input is converted to the uncoupled basis.
  static DensityMatrix from_matrix(const CMatrix4& rho, Basis basis = Basis::uncoupled);
  static DensityMatrix pure(const FourState& s);

  const CMatrix4& matrix() const { return rho_; }

 private:
  explicit DensityMatrix(const CMatrix4& rho) : rho_(rho) {}
  CMatrix4 rho_;
};

// sigma_y (x) sigma_y in the uncoupled basis order.
const CMatrix4& spin_flip();

// max(0, l1 - l2 - l3 - l4), l_i the descending square roots of the
// eigenvalues of rho (sy sy) rho* (sy sy), obtained from the Hermitian matrix
// sqrt(rho) rho~ sqrt(rho).
double concurrence_wootters(const DensityMatrix& rho);

// State evolved from a|++> + b|--> + c|+-> + d|-+> given the evolved
// eigenstate amplitudes x, y (subspace I) and z, w (subspace II).
FourState assemble_state(cplx a, cplx b, cplx c, cplx d, const BlockAmplitudes& x, const BlockAmplitudes& y,
                         const BlockAmplitudes& z, const BlockAmplitudes& w, double theta10, double theta20);

double concurrence_subspace_I(cplx a, cplx b, const BlockAmplitudes& x, const BlockAmplitudes& y, double theta10);

double concurrence_generic(cplx a, cplx b, cplx c, cplx d, const BlockAmplitudes& x, const BlockAmplitudes& y,
                           const BlockAmplitudes& z, const BlockAmplitudes& w, double theta10, double theta20);

// |++>, |-->, (|++> + |-->)/sqrt2, (|++> - |-->)/sqrt2.
enum class InitialKind { pp, mm, bell_s, bell_a };

// Closed form under the first condition; J is the block's rotation angle.
double concurrence_ic1(InitialKind kind, double theta10, double J);

// Lambda-free products of the IC2 subspace-I amplitudes.
struct Ic2Products {
  double re_x1x2 = 0.0;
  double im_x1x2 = 0.0;
  double x1y2_plus_y1x2 = 0.0;
};

Ic2Products ic2_products(const Ic2Setup& setup, double t);

double concurrence_ic2(InitialKind kind, const Ic2Setup& setup, double t);

}  // namespace hxyz
