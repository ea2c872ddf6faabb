#include "hxyz/model.hpp"

#include <cmath>

#include "hxyz/errors.hpp"

namespace hxyz {

ModelParams ModelParams::from_exchange(const DriveProfile& lambda_x, const DriveProfile& lambda_y,
                                       const DriveProfile& lambda_z, const DriveProfile& omega_1,
                                       const DriveProfile& omega_2) {
  ModelParams p;
  p.lambda_p = DriveProfile::sum({DriveProfile::scaled(0.25, lambda_x), DriveProfile::scaled(0.25, lambda_y)});
  p.lambda_m = DriveProfile::sum({DriveProfile::scaled(0.25, lambda_x), DriveProfile::scaled(-0.25, lambda_y)});
  p.lambda_z = lambda_z;
  p.omega_plus = DriveProfile::sum({DriveProfile::scaled(0.5, omega_1), DriveProfile::scaled(0.5, omega_2)});
  p.omega_minus = DriveProfile::sum({DriveProfile::scaled(0.5, omega_1), DriveProfile::scaled(-0.5, omega_2)});
  return p;
}

DriveProfile ModelParams::lambda_x() const {
  return DriveProfile::sum({DriveProfile::scaled(2.0, lambda_p), DriveProfile::scaled(2.0, lambda_m)});
}

DriveProfile ModelParams::lambda_y() const {
  return DriveProfile::sum({DriveProfile::scaled(2.0, lambda_p), DriveProfile::scaled(-2.0, lambda_m)});
}

DriveProfile ModelParams::omega_1() const { return DriveProfile::sum({omega_plus, omega_minus}); }

DriveProfile ModelParams::omega_2() const {
  return DriveProfile::sum({omega_plus, DriveProfile::scaled(-1.0, omega_minus)});
}

bool ModelParams::is_static() const {
  return lambda_p.is_constant() && lambda_m.is_constant() && lambda_z.is_constant() &&
         omega_plus.is_constant() && omega_minus.is_constant();
}

std::vector<double> ModelParams::frequencies() const {
  std::vector<double> out;
  for (const auto* p : {&lambda_p, &lambda_m, &lambda_z, &omega_plus, &omega_minus}) {
    auto f = p->frequencies();
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

CMatrix4 hamiltonian_uncoupled(const ModelParams& params, double t) {
  const double wp = evaluate(params.omega_plus, t);
  const double wm = evaluate(params.omega_minus, t);
  const double lp = evaluate(params.lambda_p, t);
  const double lm = evaluate(params.lambda_m, t);
  const double lz4 = 0.25 * evaluate(params.lambda_z, t);
  CMatrix4 h;
  h(0, 0) = wp + lz4;
  h(0, 1) = lm;
  h(1, 0) = lm;
  h(1, 1) = -wp + lz4;
  h(2, 2) = wm - lz4;
  h(2, 3) = lp;
  h(3, 2) = lp;
  h(3, 3) = -wm - lz4;
  return h;
}

const CMatrix4& coupled_basis_change() {
  static const CMatrix4 b = [] {
    const double r = 1.0 / std::sqrt(2.0);
    CMatrix4 m;
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 2) = r;
    m(3, 2) = r;
    m(2, 3) = r;
    m(3, 3) = -r;
    return m;
  }();
  return b;
}

CMatrix4 hamiltonian_coupled(const ModelParams& params, double t) {
  const double wp = evaluate(params.omega_plus, t);
  const double wm = evaluate(params.omega_minus, t);
  const double lp = evaluate(params.lambda_p, t);
  const double lm = evaluate(params.lambda_m, t);
  const double lz4 = 0.25 * evaluate(params.lambda_z, t);
  CMatrix4 h;
  h(0, 0) = wp + lz4;
  h(0, 1) = lm;
  h(1, 0) = lm;
  h(1, 1) = -wp + lz4;
  h(2, 2) = lp - lz4;
  h(2, 3) = wm;
  h(3, 2) = wm;
  h(3, 3) = -lp - lz4;
  return h;
}

BlockMatrix2 block_from_values(double field, double coupling, double lambda_z, Subspace subspace) {
  const double lz4 = (subspace == Subspace::I ? 0.25 : -0.25) * lambda_z;
  BlockMatrix2 b;
  b.subspace = subspace;
  b.h(0, 0) = field + lz4;
  b.h(0, 1) = coupling;
  b.h(1, 0) = coupling;
  b.h(1, 1) = -field + lz4;
  return b;
}

BlockMatrix2 block(const ModelParams& params, double t, Subspace subspace) {
  const bool first = subspace == Subspace::I;
  const double field = evaluate(first ? params.omega_plus : params.omega_minus, t);
  const double coupling = evaluate(first ? params.lambda_m : params.lambda_p, t);
  return block_from_values(field, coupling, evaluate(params.lambda_z, t), subspace);
}

Spectrum spectrum(const ModelParams& params, double t, Subspace subspace) {
  const bool first = subspace == Subspace::I;
  const double field = evaluate(first ? params.omega_plus : params.omega_minus, t);
  const double coupling = evaluate(first ? params.lambda_m : params.lambda_p, t);
  const double lz4 = (first ? 0.25 : -0.25) * evaluate(params.lambda_z, t);

  Spectrum s;
  s.eta_or_zeta = std::hypot(field, coupling);
  s.degenerate_angle = field == 0.0 && coupling == 0.0;
  s.theta = s.degenerate_angle ? 0.0 : 0.5 * std::atan2(coupling, field);
  s.eps_plus = lz4 + s.eta_or_zeta;
  s.eps_minus = lz4 - s.eta_or_zeta;
  return s;
}

GroundState static_ground_state(const ModelParams& params) {
  if (!params.is_static()) throw NotStatic("static_ground_state: every drive profile must be constant");
  const double eta = spectrum(params, 0.0, Subspace::I).eta_or_zeta;
  const double zeta = spectrum(params, 0.0, Subspace::II).eta_or_zeta;
  // eps2 = lz/4 - eta against eps4 = -lz/4 - zeta.
  const double lz2 = 0.5 * evaluate(params.lambda_z, 0.0);
  const double gap = eta - (lz2 + zeta);
  if (std::abs(gap) <= 1e-12 * std::max(1.0, std::abs(eta))) return GroundState::DegeneratePair;
  return gap > 0.0 ? GroundState::Phi2 : GroundState::Phi4;
}

}  // namespace hxyz
