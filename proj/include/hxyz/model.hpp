#pragma once

// Two spin-1/2 particles with anisotropic XYZ exchange in a non-uniform field
// along z. Uncoupled basis order is frozen as {|++>, |-->, |+->, |-+>}; the
// coupled basis is {|++>, |-->, (|+->+|-+>)/sqrt2, (|+->-|-+>)/sqrt2}.

#include "hxyz/drive.hpp"
#include "hxyz/linalg.hpp"

namespace hxyz {

enum class Subspace { I, II };

// Which one-sided value a Hamiltonian should return at a breakpoint where it
// may jump. Continuous Hamiltonians ignore it.
enum class Limit { from_left, from_right };

// Drive profiles in combined form. lambda_p = (lambda_x+lambda_y)/4,
// lambda_m = (lambda_x-lambda_y)/4, omega_pm = (omega_1 +- omega_2)/2.
struct ModelParams {
  DriveProfile lambda_p;
  DriveProfile lambda_m;
  DriveProfile lambda_z;
  DriveProfile omega_plus;
  DriveProfile omega_minus;

  static ModelParams from_exchange(const DriveProfile& lambda_x, const DriveProfile& lambda_y,
                                   const DriveProfile& lambda_z, const DriveProfile& omega_1,
                                   const DriveProfile& omega_2);

  DriveProfile lambda_x() const;
  DriveProfile lambda_y() const;
  DriveProfile omega_1() const;
  DriveProfile omega_2() const;

  bool is_static() const;
  std::vector<double> frequencies() const;
};

struct BlockMatrix2 {
  Subspace subspace = Subspace::I;
  CMatrix2 h;
};

struct Spectrum {
  double theta = 0.0;
  double eta_or_zeta = 0.0;
  double eps_plus = 0.0;
  double eps_minus = 0.0;
  bool degenerate_angle = false;  // field and coupling both zero; theta reported as 0
};

CMatrix4 hamiltonian_uncoupled(const ModelParams& params, double t);
CMatrix4 hamiltonian_coupled(const ModelParams& params, double t);

// Columns are the coupled basis vectors written in the uncoupled basis.
const CMatrix4& coupled_basis_change();

// Subspace I: [[w+ + lz/4, lm], [lm, -w+ + lz/4]].
// Subspace II: same with lm -> lp, lz -> -lz, w+ -> w-.
BlockMatrix2 block(const ModelParams& params, double t, Subspace subspace);

// Block built from already evaluated (field, coupling, lambda_z) values.
BlockMatrix2 block_from_values(double field, double coupling, double lambda_z, Subspace subspace);

Spectrum spectrum(const ModelParams& params, double t, Subspace subspace);

enum class GroundState { Phi2, Phi4, DegeneratePair };

// Ground state of a time-independent Hamiltonian. For DegeneratePair the
// relative phase of the equal superposition is left unspecified.
GroundState static_ground_state(const ModelParams& params);

}  // namespace hxyz
