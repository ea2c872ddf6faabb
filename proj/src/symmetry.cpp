#include "hxyz/symmetry.hpp"

#include <utility>

#include "hxyz/entangle.hpp"

namespace hxyz {

Parity parity(BasisState s) {
  return (s == BasisState::pp || s == BasisState::mm) ? Parity::positive : Parity::negative;
}

CMatrix4 parity_operator() {
  CMatrix4 p;
  p(0, 0) = 1.0;
  p(1, 1) = 1.0;
  p(2, 2) = -1.0;
  p(3, 3) = -1.0;
  return p;
}

ModelParams map_params_I_to_II(const ModelParams& params) {
  ModelParams out;
  out.lambda_m = params.lambda_p;
  out.lambda_p = params.lambda_m;
  out.lambda_z = DriveProfile::scaled(-1.0, params.lambda_z);
  out.omega_plus = params.omega_minus;
  out.omega_minus = params.omega_plus;
  return out;
}

ModelParams flip_fields(const ModelParams& params) {
  ModelParams out = params;
  out.omega_plus = DriveProfile::scaled(-1.0, params.omega_plus);
  out.omega_minus = DriveProfile::scaled(-1.0, params.omega_minus);
  return out;
}

ModelParams map_params(SymmetryOp op, const ModelParams& params) {
  switch (op) {
    case SymmetryOp::spin_reflection_xy:
      return params;
    case SymmetryOp::subspace_swap:
      return map_params_I_to_II(params);
    case SymmetryOp::global_flip:
      return flip_fields(params);
  }
  return params;
}

FourState map_state_global_flip(const FourState& s) {
  FourState u = basis_convert(s, Basis::uncoupled);
  std::swap(u.f[0], u.f[1]);
  std::swap(u.f[2], u.f[3]);
  return basis_convert(u, s.basis);
}

FourState map_state_subspace_swap(const FourState& s) {
  FourState u = basis_convert(s, Basis::uncoupled);
  std::swap(u.f[0], u.f[2]);
  std::swap(u.f[1], u.f[3]);
  return basis_convert(u, s.basis);
}

FourState map_state(SymmetryOp op, const FourState& s) {
  switch (op) {
    case SymmetryOp::spin_reflection_xy: {
      FourState u = basis_convert(s, Basis::uncoupled);
      u.f = parity_operator() * u.f;
      return basis_convert(u, s.basis);
    }
    case SymmetryOp::subspace_swap:
      return map_state_subspace_swap(s);
    case SymmetryOp::global_flip:
      return map_state_global_flip(s);
  }
  return s;
}

}  // namespace hxyz
