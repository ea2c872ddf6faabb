#pragma once

// Closed-form propagators of the parity blocks under the two integrability
// conditions:
//   IC1  the mixing angle is constant (lambda_m proportional to omega_+),
//   IC2  d(theta1)/dt = kappa * lambda_m / sin(2 theta1), omega_+ derived.
// Subspace II is handled by the same code with (lambda_m, omega_+, lambda_z,
// kappa, theta10) replaced by (lambda_p, omega_-, -lambda_z, chi, theta20).

#include <span>
#include <string>
#include <vector>

#include "hxyz/drive.hpp"
#include "hxyz/model.hpp"
#include "hxyz/state.hpp"

namespace hxyz {

enum class Eigenstate { phi1, phi2, phi3, phi4 };

Subspace subspace_of(Eigenstate e);

// Coefficients of phi_j(0) in its own block for mixing angle theta0.
BlockAmplitudes eigenstate_amplitudes(Eigenstate e, double theta0);

// signed_field: phase integral sqrt(1+k^2) * int omega_+ (exact propagator).
// unsigned_eta: phase integral int eta = int sqrt(omega_+^2 + lambda_m^2),
// which matches the exact propagator only while omega_+ keeps its sign.
enum class PhaseConvention { signed_field, unsigned_eta };

struct Ic1Setup {
  double k = 0.0;         // lambda_m = k * omega_+
  double k_second = 0.0;  // lambda_p = k_second * omega_-
  double theta10 = 0.0;
  double theta20 = 0.0;
  PhaseConvention phase = PhaseConvention::signed_field;

  static Ic1Setup from_ratios(double k, double k_second,
                              PhaseConvention phase = PhaseConvention::signed_field);
};

// Model with lambda_m = k omega_+ and lambda_p = k_second omega_-.
ModelParams ic1_model(const DriveProfile& omega_plus, const DriveProfile& omega_minus,
                      const DriveProfile& lambda_z, double k, double k_second);

class Ic1Propagator {
 public:
  // Verifies the proportionality on 1000 points of [0, t_end]; throws
  // NotIntegrable on a relative deviation above 1e-10.
  Ic1Propagator(Ic1Setup setup, ModelParams params, double t_end);

  const Ic1Setup& setup() const { return setup_; }
  const ModelParams& params() const { return params_; }

  // Rotation angle J of the block (the eta or zeta phase integral) at t.
  double rotation_angle(double t, Subspace s) const;
  // Rotation angles on an ascending grid; accumulates piecewise for the
  // unsigned convention.
  std::vector<double> rotation_angles(std::span<const double> times, Subspace s) const;

  // exp(-i int_0^t eps_j), j = 1..4.
  cplx phase(double t, int j) const;
  BlockAmplitudes evolve(double t, Eigenstate initial) const;
  // Evolution given a precomputed rotation angle for the eigenstate's block.
  BlockAmplitudes evolve_with_angle(double t, double angle, Eigenstate initial) const;

 private:
  Ic1Setup setup_;
  ModelParams params_;
};

cplx ic1_phase(const Ic1Setup& setup, const ModelParams& params, double t, int j);
BlockAmplitudes ic1_evolve(const Ic1Setup& setup, const ModelParams& params, double t, Eigenstate initial);

struct Ic2Setup {
  double kappa = 1.0;  // subspace I
  double chi = 1.0;    // subspace II
  double theta10 = 0.0;
  double theta20 = 0.0;
  DriveProfile lambda_m;
  DriveProfile lambda_p;
  DriveProfile lambda_z;
};

struct Admissibility {
  bool valid = true;
  std::string reason;  // names the violated inequality
  explicit operator bool() const { return valid; }
};

Admissibility ic2_admissible(const Ic2Setup& setup, Subspace s);
// Both subspaces.
Admissibility ic2_admissible(const Ic2Setup& setup);

// Mixing angle on the principal branch 2 theta in [0, pi]. Throws BranchExit
// when cos(2 theta) leaves [-1, 1] by more than 1e-12.
double ic2_theta(const Ic2Setup& setup, double t, Subspace s);

// Field (omega_+ or omega_-) implied by the condition: coupling / tan(2 theta).
// Zero where theta = pi/4. Where sin(2 theta) vanishes the field jumps; `side`
// selects the one-sided limit.
double ic2_derived_field(const Ic2Setup& setup, double t, Subspace s, Limit side = Limit::from_right);

// Times in (0, t_end) where the derived field is discontinuous.
std::vector<double> ic2_breakpoints(const Ic2Setup& setup, double t_end, Subspace s);

BlockMatrix2 ic2_block(const Ic2Setup& setup, double t, Subspace s, Limit side = Limit::from_right);

BlockAmplitudes ic2_evolve(const Ic2Setup& setup, double t, Eigenstate initial);

// delta_theta(t) = (theta(t) - theta0) sqrt(1 + kappa^-2).
double ic2_delta(const Ic2Setup& setup, double t, Subspace s);

}  // namespace hxyz
