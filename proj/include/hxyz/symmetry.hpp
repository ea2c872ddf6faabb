#pragma once

// Discrete symmetries of the Hamiltonian as transforms on parameters and
// states. Each transform is an involution.
//   spin_reflection_xy  S_ix -> -S_ix (or S_iy -> -S_iy); fixes parity.
//   subspace_swap       S_2 -> -S_2: |++> <-> |+->, |--> <-> |-+> together
//                       with lambda_m <-> lambda_p, lambda_z -> -lambda_z,
//                       omega_+ <-> omega_-.
//   global_flip         S_1, S_2 -> -S_1, -S_2: |++> <-> |-->, |+-> <-> |-+>
//                       together with omega_pm -> -omega_pm.

#include "hxyz/model.hpp"
#include "hxyz/state.hpp"

namespace hxyz {

enum class SymmetryOp { spin_reflection_xy, subspace_swap, global_flip };

enum class Parity { positive, negative };

enum class BasisState { pp, mm, pm, mp };

Parity parity(BasisState s);

// Eigenvalue of the spin reflection on each uncoupled basis vector.
CMatrix4 parity_operator();

ModelParams map_params_I_to_II(const ModelParams& params);
ModelParams flip_fields(const ModelParams& params);
ModelParams map_params(SymmetryOp op, const ModelParams& params);

// Uncoupled or coupled input; output keeps the input basis.
FourState map_state_global_flip(const FourState& s);
FourState map_state_subspace_swap(const FourState& s);
FourState map_state(SymmetryOp op, const FourState& s);

}  // namespace hxyz
