#pragma once

// Approximate propagators for subspace I with one static and one sinusoidal
// parameter: first-order perturbation theory and the rotating wave
// approximation (RWA).

#include "hxyz/drive.hpp"
#include "hxyz/model.hpp"
#include "hxyz/state.hpp"

namespace hxyz {

// lambda_drive: omega_+ static, lambda_m = mu sin(beta t + phi).
// field_drive:  lambda_m static, omega_+ = mu sin(beta t + phi).
enum class RwaMode { lambda_drive, field_drive };

struct RwaSetup {
  RwaMode mode = RwaMode::lambda_drive;
  double static_value = 0.0;
  DriveProfile::Sinusoid drive;
  double theta10 = 0.0;
  DriveProfile lambda_z;
};

struct RwaParameters {
  double detuning = 0.0;  // beta - 2 * static_value
  double gamma = 0.0;     // sqrt(mu^2 + detuning^2)
  double theta = 0.0;     // half the polar angle of (detuning, mu)
};

RwaParameters rwa_parameters(const RwaSetup& setup);

// Exact model the approximation stands in for (block II left empty).
ModelParams rwa_model(const RwaSetup& setup);

// Evolved phi1(0) = cos(theta10)|++> + sin(theta10)|-->.
BlockAmplitudes rwa_evolve(const RwaSetup& setup, double t);
// Evolved orthogonal partner phi2(0).
BlockAmplitudes rwa_orthogonal(const RwaSetup& setup, double t);

// Leading order amplitude of |++> starting from |++>.
cplx perturb_x1(double omega_plus, double t);

// First-order transition amplitude into |--> for lambda_m = mu sin(beta t)
// starting from |++>. Throws ResonancePole when beta = +-2 omega_+ within 1e-12.
cplx perturb_x2(double omega_plus, const DriveProfile::Sinusoid& drive, double t);

// |mu / (beta - 2 omega_+)|; must be << 1 for the perturbative result to hold.
double perturb_validity(double omega_plus, const DriveProfile::Sinusoid& drive);

}  // namespace hxyz
