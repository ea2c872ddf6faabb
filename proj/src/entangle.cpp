#include "hxyz/entangle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hxyz/errors.hpp"

namespace hxyz {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Jacobi eigenvalues are resolved to about eps * |A|; anything closer to zero
// is noise, and its square root would be amplified to ~1e-8.
double noise_floor(const CMatrix4& a) {
  return 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, a.frobenius_norm());
}

double clamp_root(double ev, double floor) { return ev <= floor ? 0.0 : std::sqrt(ev); }

}  // namespace

FourState basis_convert(const FourState& s, Basis target) {
  if (s.basis == target) return s;
  FourState out;
  out.basis = target;
  out.f[0] = s.f[0];
  out.f[1] = s.f[1];
  // The map between (f+-, f-+) and (f3, f4) is its own inverse.
  out.f[2] = kInvSqrt2 * (s.f[2] + s.f[3]);
  out.f[3] = kInvSqrt2 * (s.f[2] - s.f[3]);
  return out;
}

double concurrence_pure(const FourState& s) {
  const auto& f = s.f;
  const double c = s.basis == Basis::uncoupled ? 2.0 * std::abs(f[0] * f[1] - f[2] * f[3])
                                               : std::abs(2.0 * f[0] * f[1] - (f[2] * f[2] - f[3] * f[3]));
  // rounding of 1/sqrt2 amplitudes lands one ulp above 1
  return std::min(c, 1.0);
}

DensityMatrix DensityMatrix::from_matrix(const CMatrix4& rho, Basis basis) {
  if (max_hermiticity_defect(rho) > 1e-12) throw InvalidDensityMatrix("density matrix is not Hermitian");
  const cplx tr = rho.trace();
  if (std::abs(tr - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "density matrix trace " << tr.real() << " != 1";
    throw InvalidDensityMatrix(os.str());
  }
  const auto eig = jacobi_eigen(rho);
  if (eig.values.back() < -1e-10) throw InvalidDensityMatrix("density matrix has a negative eigenvalue");
  if (basis == Basis::coupled) {
    const CMatrix4& b = coupled_basis_change();
    return DensityMatrix(b * rho * b.adjoint());
  }
  return DensityMatrix(rho);
}

DensityMatrix DensityMatrix::pure(const FourState& s) {
  const FourState u = basis_convert(s, Basis::uncoupled);
  CMatrix4 rho;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) rho(r, c) = u.f[r] * std::conj(u.f[c]);
  return from_matrix(rho);
}

const CMatrix4& spin_flip() {
  // sigma_y|+> = i|->, sigma_y|-> = -i|+>
  static const CMatrix4 y = [] {
    CMatrix4 m;
    m(0, 1) = -1.0;
    m(1, 0) = -1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    return m;
  }();
  return y;
}

double concurrence_wootters(const DensityMatrix& dm) {
  const CMatrix4& rho = dm.matrix();
  const CMatrix4& y = spin_flip();
  const CMatrix4 tilde = y * rho.conjugate() * y;

  const auto eig = jacobi_eigen(rho);
  const double floor_rho = noise_floor(rho);
  CMatrix4 root;
  for (std::size_t j = 0; j < 4; ++j) {
    const double s = clamp_root(eig.values[j], floor_rho);
    if (s == 0.0) continue;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c)
        root(r, c) += s * eig.vectors(r, j) * std::conj(eig.vectors(c, j));
  }
  const CMatrix4 herm = root * tilde * root;
  const auto m = jacobi_eigen(herm);
  const double floor_m = noise_floor(herm);
  std::array<double, 4> l{};
  for (std::size_t j = 0; j < 4; ++j) l[j] = clamp_root(m.values[j], floor_m);
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

FourState assemble_state(cplx a, cplx b, cplx c, cplx d, const BlockAmplitudes& x, const BlockAmplitudes& y,
                         const BlockAmplitudes& z, const BlockAmplitudes& w, double theta10, double theta20) {
  const double c1 = std::cos(theta10), s1 = std::sin(theta10);
  const double c2 = std::cos(theta20), s2 = std::sin(theta20);
  const cplx on_x = a * c1 + b * s1, on_y = -a * s1 + b * c1;
  const cplx on_z = c * c2 + d * s2, on_w = -c * s2 + d * c2;
  FourState out;
  out.basis = Basis::uncoupled;
  out.f = {on_x * x.a1 + on_y * y.a1, on_x * x.a2 + on_y * y.a2, on_z * z.a1 + on_w * w.a1,
           on_z * z.a2 + on_w * w.a2};
  return out;
}

double concurrence_subspace_I(cplx a, cplx b, const BlockAmplitudes& x, const BlockAmplitudes& y, double theta10) {
  const double c1 = std::cos(theta10), s1 = std::sin(theta10);
  const cplx on_x = a * c1 + b * s1, on_y = -a * s1 + b * c1;
  return 2.0 * std::abs(on_x * on_x * x.a1 * x.a2 + on_y * on_y * y.a1 * y.a2 +
                        on_x * on_y * (x.a1 * y.a2 + x.a2 * y.a1));
}

double concurrence_generic(cplx a, cplx b, cplx c, cplx d, const BlockAmplitudes& x, const BlockAmplitudes& y,
                           const BlockAmplitudes& z, const BlockAmplitudes& w, double theta10, double theta20) {
  const double c1 = std::cos(theta10), s1 = std::sin(theta10);
  const double c2 = std::cos(theta20), s2 = std::sin(theta20);
  const cplx on_x = a * c1 + b * s1, on_y = -a * s1 + b * c1;
  const cplx on_z = c * c2 + d * s2, on_w = -c * s2 + d * c2;
  const cplx first = on_x * on_x * x.a1 * x.a2 + on_y * on_y * y.a1 * y.a2 + on_x * on_y * (x.a1 * y.a2 + x.a2 * y.a1);
  const cplx second = on_z * on_z * z.a1 * z.a2 + on_w * on_w * w.a1 * w.a2 + on_z * on_w * (z.a1 * w.a2 + z.a2 * w.a1);
  return 2.0 * std::abs(first - second);
}

double concurrence_ic1(InitialKind kind, double theta10, double J) {
  const double s2 = std::sin(2.0 * theta10), c2 = std::cos(2.0 * theta10);
  const double sj = std::sin(J);
  switch (kind) {
    case InitialKind::pp:
      return std::abs(cplx(-2.0 * s2 * c2 * sj * sj, -s2 * std::sin(2.0 * J)));
    case InitialKind::mm:
      return std::abs(cplx(2.0 * s2 * c2 * sj * sj, -s2 * std::sin(2.0 * J)));
    case InitialKind::bell_s:
      return std::abs(cplx(s2 * s2 * std::cos(2.0 * J) + c2 * c2, -s2 * std::sin(2.0 * J)));
    case InitialKind::bell_a:
      return std::abs(cplx(-s2 * s2 * std::cos(2.0 * J) - c2 * c2, -s2 * std::sin(2.0 * J)));
  }
  return 0.0;
}

Ic2Products ic2_products(const Ic2Setup& setup, double t) {
  const double theta = ic2_theta(setup, t, Subspace::I);
  const double delta = ic2_delta(setup, t, Subspace::I);
  const double k = setup.kappa;
  const double root = std::sqrt(1.0 + k * k);
  const double s2t = std::sin(2.0 * theta), c2t = std::cos(2.0 * theta);
  const double sd = std::sin(delta), cd = std::cos(delta);
  const double s2d = std::sin(2.0 * delta), c2d = std::cos(2.0 * delta);
  const double sgn = k >= 0.0 ? 1.0 : -1.0;

  Ic2Products p;
  p.im_x1x2 = k * sd * sd * c2t / (1.0 + k * k) - 0.5 * sgn * s2t * s2d / root;
  p.re_x1x2 = 0.5 * s2t * c2d - 0.5 * std::abs(k) * s2d * c2t / root;
  p.x1y2_plus_y1x2 = std::abs(k) * s2t * s2d / root + cd * cd * c2t + sd * sd * c2t * (1.0 - k * k) / (1.0 + k * k);
  return p;
}

double concurrence_ic2(InitialKind kind, const Ic2Setup& setup, double t) {
  const Ic2Products p = ic2_products(setup, t);
  const double s20 = std::sin(2.0 * setup.theta10), c20 = std::cos(2.0 * setup.theta10);
  const cplx im = kI * (2.0 * p.im_x1x2);
  switch (kind) {
    case InitialKind::pp:
      return std::abs(2.0 * c20 * p.re_x1x2 + im - s20 * p.x1y2_plus_y1x2);
    case InitialKind::mm:
      return std::abs(-2.0 * c20 * p.re_x1x2 + im + s20 * p.x1y2_plus_y1x2);
    case InitialKind::bell_s:
      return std::abs(2.0 * s20 * p.re_x1x2 + im + c20 * p.x1y2_plus_y1x2);
    case InitialKind::bell_a:
      return std::abs(-2.0 * s20 * p.re_x1x2 + im - c20 * p.x1y2_plus_y1x2);
  }
  return 0.0;
}

}  // namespace hxyz
