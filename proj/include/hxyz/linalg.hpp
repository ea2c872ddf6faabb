#pragma once

// Fixed-size complex matrices and a cyclic Jacobi eigensolver for the small
// Hermitian problems (2x2 blocks, 4x4 density matrices) that appear here.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>

#include "hxyz/errors.hpp"

namespace hxyz {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

template <std::size_t N>
using CVector = std::array<cplx, N>;

template <std::size_t N>
class CMatrix {
 public:
  constexpr CMatrix() : a_{} {}

  static CMatrix identity() {
    CMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  cplx& operator()(std::size_t r, std::size_t c) { return a_[r * N + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return a_[r * N + c]; }

  CMatrix adjoint() const {
    CMatrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
  }

  CMatrix conjugate() const {
    CMatrix m;
    for (std::size_t i = 0; i < N * N; ++i) m.a_[i] = std::conj(a_[i]);
    return m;
  }

  cplx trace() const {
    cplx s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += (*this)(i, i);
    return s;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& x : a_) s += std::norm(x);
    return std::sqrt(s);
  }

  double off_diagonal_norm() const {
    double s = 0.0;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c)
        if (r != c) s += std::norm((*this)(r, c));
    return std::sqrt(s);
  }

  friend CMatrix operator*(const CMatrix& x, const CMatrix& y) {
    CMatrix m;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) {
        const cplx xrk = x(r, k);
        if (xrk == cplx{}) continue;
        for (std::size_t c = 0; c < N; ++c) m(r, c) += xrk * y(k, c);
      }
    return m;
  }

  friend CVector<N> operator*(const CMatrix& x, const CVector<N>& v) {
    CVector<N> out{};
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out[r] += x(r, c) * v[c];
    return out;
  }

  friend CMatrix operator+(CMatrix x, const CMatrix& y) {
    for (std::size_t i = 0; i < N * N; ++i) x.a_[i] += y.a_[i];
    return x;
  }

  friend CMatrix operator-(CMatrix x, const CMatrix& y) {
    for (std::size_t i = 0; i < N * N; ++i) x.a_[i] -= y.a_[i];
    return x;
  }

  friend CMatrix operator*(cplx s, CMatrix x) {
    for (auto& e : x.a_) e *= s;
    return x;
  }
  friend CMatrix operator*(const CMatrix& x, cplx s) { return s * x; }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::array<cplx, N * N> a_;
};

using CMatrix2 = CMatrix<2>;
using CMatrix4 = CMatrix<4>;

template <std::size_t N>
double norm_squared(const CVector<N>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return s;
}

template <std::size_t N>
cplx inner(const CVector<N>& u, const CVector<N>& v) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += std::conj(u[i]) * v[i];
  return s;
}

template <std::size_t N>
double max_hermiticity_defect(const CMatrix<N>& m) {
  double d = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = r; c < N; ++c)
      d = std::max(d, std::abs(m(r, c) - std::conj(m(c, r))));
  return d;
}

// Eigen-decomposition of a Hermitian matrix. Column j of `vectors` is the
// eigenvector belonging to `values[j]`; values are sorted descending.
template <std::size_t N>
struct HermitianEigen {
  std::array<double, N> values{};
  CMatrix<N> vectors;
  int sweeps = 0;
};

// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm drops below
// `tol * max(1, ||A||_F)`. Only the upper triangle's Hermitian image is used.
template <std::size_t N>
HermitianEigen<N> jacobi_eigen(CMatrix<N> a, double tol = 1e-14, int max_sweeps = 50) {
  for (std::size_t r = 0; r < N; ++r) {
    a(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < N; ++c) a(c, r) = std::conj(a(r, c));
  }
  CMatrix<N> v = CMatrix<N>::identity();
  const double scale = std::max(1.0, a.frobenius_norm());

  int sweep = 0;
  while (a.off_diagonal_norm() >= tol * scale) {
    if (sweep == max_sweeps)
      throw NonConvergence("jacobi_eigen: off-diagonal norm did not converge");
    ++sweep;
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double g = std::abs(a(p, q));
        if (g == 0.0) continue;
        const cplx phase = a(p, q) / g;  // e^{i phi}
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U restricted to (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        const cplx upp = c, upq = s;
        const cplx uqp = -s * std::conj(phase), uqq = c * std::conj(phase);

        for (std::size_t r = 0; r < N; ++r) {  // A <- A U
          const cplx arp = a(r, p), arq = a(r, q);
          a(r, p) = arp * upp + arq * uqp;
          a(r, q) = arp * upq + arq * uqq;
        }
        for (std::size_t c2 = 0; c2 < N; ++c2) {  // A <- U^H A
          const cplx apc = a(p, c2), aqc = a(q, c2);
          a(p, c2) = std::conj(upp) * apc + std::conj(uqp) * aqc;
          a(q, c2) = std::conj(upq) * apc + std::conj(uqq) * aqc;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t r = 0; r < N; ++r) {  // V <- V U
          const cplx vrp = v(r, p), vrq = v(r, q);
          v(r, p) = vrp * upp + vrq * uqp;
          v(r, q) = vrp * upq + vrq * uqq;
        }
      }
    }
  }

  std::array<std::size_t, N> order{};
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  for (std::size_t i = 1; i < N; ++i)  // insertion sort, descending
    for (std::size_t j = i; j > 0 && a(order[j], order[j]).real() > a(order[j - 1], order[j - 1]).real(); --j)
      std::swap(order[j], order[j - 1]);

  HermitianEigen<N> out;
  out.sweeps = sweep;
  for (std::size_t j = 0; j < N; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    for (std::size_t r = 0; r < N; ++r) out.vectors(r, j) = v(r, order[j]);
  }
  return out;
}

}  // namespace hxyz
