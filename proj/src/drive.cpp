#include "hxyz/drive.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hxyz/errors.hpp"

namespace hxyz {

DriveProfile DriveProfile::constant(double value) { return DriveProfile(Constant{value}); }

DriveProfile DriveProfile::sinusoid(double amplitude, double frequency, double phase) {
  if (frequency == 0.0 || !std::isfinite(frequency))
    throw std::invalid_argument("sinusoid drive needs a finite nonzero frequency; use a constant instead");
  return DriveProfile(Sinusoid{amplitude, frequency, phase});
}

DriveProfile DriveProfile::scaled(double factor, const DriveProfile& base) {
  if (!std::isfinite(factor)) throw std::invalid_argument("scaled drive factor must be finite");
  return DriveProfile(Scaled{factor, std::make_shared<const DriveProfile>(base)});
}

DriveProfile DriveProfile::sum(std::vector<DriveProfile> terms) {
  return DriveProfile(Sum{std::move(terms)});
}

bool DriveProfile::is_constant() const {
  return std::visit(
      [](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return true;
        } else if constexpr (std::is_same_v<T, Sinusoid>) {
          return r.amplitude == 0.0;
        } else if constexpr (std::is_same_v<T, Scaled>) {
          return r.factor == 0.0 || r.base->is_constant();
        } else {
          for (const auto& term : r.terms)
            if (!term.is_constant()) return false;
          return true;
        }
      },
      rep_);
}

bool DriveProfile::is_zero() const {
  return std::visit(
      [](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return r.value == 0.0;
        } else if constexpr (std::is_same_v<T, Sinusoid>) {
          return r.amplitude == 0.0;
        } else if constexpr (std::is_same_v<T, Scaled>) {
          return r.factor == 0.0 || r.base->is_zero();
        } else {
          for (const auto& term : r.terms)
            if (!term.is_zero()) return false;
          return true;
        }
      },
      rep_);
}

std::vector<double> DriveProfile::frequencies() const {
  std::vector<double> out;
  std::visit(
      [&out](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Sinusoid>) {
          if (r.amplitude != 0.0) out.push_back(std::abs(r.frequency));
        } else if constexpr (std::is_same_v<T, Scaled>) {
          if (r.factor != 0.0) out = r.base->frequencies();
        } else if constexpr (std::is_same_v<T, Sum>) {
          for (const auto& term : r.terms) {
            auto f = term.frequencies();
            out.insert(out.end(), f.begin(), f.end());
          }
        }
      },
      rep_);
  return out;
}

double evaluate(const DriveProfile& p, double t) {
  return std::visit(
      [t](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, DriveProfile::Constant>) {
          return r.value;
        } else if constexpr (std::is_same_v<T, DriveProfile::Sinusoid>) {
          return r.amplitude * std::sin(r.frequency * t + r.phase);
        } else if constexpr (std::is_same_v<T, DriveProfile::Scaled>) {
          return r.factor * evaluate(*r.base, t);
        } else {
          double s = 0.0;
          for (const auto& term : r.terms) s += evaluate(term, t);
          return s;
        }
      },
      p.rep_);
}

double integral(const DriveProfile& p, double t) {
  return std::visit(
      [t](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, DriveProfile::Constant>) {
          return r.value * t;
        } else if constexpr (std::is_same_v<T, DriveProfile::Sinusoid>) {
          // (mu/beta)(cos phi - cos(beta t + phi)) in product form, which keeps
          // full relative accuracy near the zeros of the integral.
          const double half = 0.5 * r.frequency * t;
          return 2.0 * r.amplitude / r.frequency * std::sin(half + r.phase) * std::sin(half);
        } else if constexpr (std::is_same_v<T, DriveProfile::Scaled>) {
          return r.factor * integral(*r.base, t);
        } else {
          double s = 0.0;
          for (const auto& term : r.terms) s += integral(term, t);
          return s;
        }
      },
      p.rep_);
}

double derivative(const DriveProfile& p, double t) {
  return std::visit(
      [t](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, DriveProfile::Constant>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, DriveProfile::Sinusoid>) {
          return r.amplitude * r.frequency * std::cos(r.frequency * t + r.phase);
        } else if constexpr (std::is_same_v<T, DriveProfile::Scaled>) {
          return r.factor * derivative(*r.base, t);
        } else {
          double s = 0.0;
          for (const auto& term : r.terms) s += derivative(term, t);
          return s;
        }
      },
      p.rep_);
}

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  int max_depth;
};

double simpson_step(const SimpsonState& st, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = st.f(lm), frm = st.f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth >= st.max_depth)
    throw NonConvergence("quadrature: subdivision limit reached near t=" + std::to_string(m));
  return simpson_step(st, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         simpson_step(st, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double quadrature(const std::function<double(double)>& f, double t0, double t1, double tol,
                  int max_depth) {
  if (!(tol > 0.0)) throw std::invalid_argument("quadrature: tol must be positive");
  if (t0 == t1) return 0.0;
  // Start from four panels so that integrands vanishing on a coarse symmetric
  // grid (|sin| on [0, 2pi]) are not mistaken for converged.
  const SimpsonState st{f, max_depth};
  double total = 0.0;
  constexpr int kPanels = 4;
  const double h = (t1 - t0) / kPanels;
  for (int i = 0; i < kPanels; ++i) {
    const double a = t0 + i * h;
    const double b = (i + 1 == kPanels) ? t1 : a + h;
    const double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_step(st, a, b, fa, fm, fb, whole, tol / kPanels, 1);
  }
  return total;
}

}  // namespace hxyz
