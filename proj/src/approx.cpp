#include "hxyz/approx.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hxyz/errors.hpp"

namespace hxyz {

namespace {

constexpr double kPoleTol = 1e-12;

void check_drive(const DriveProfile::Sinusoid& d) {
  if (!(d.frequency > 0.0)) throw std::invalid_argument("RWA drive frequency must be positive");
}

// RWA solution of i d/dt (u1, u2) = [[s, lambda(t)], [lambda(t), -s]] (u1, u2)
// with lambda = mu sin(beta t + phi) and u(0) = (c, d).
CVector<2> rwa_core(double s, const DriveProfile::Sinusoid& drive, cplx c, cplx d, double t) {
  const double mu = drive.amplitude, beta = drive.frequency, phi = drive.phase;
  const double detuning = beta - 2.0 * s;
  const double gamma = std::hypot(mu, detuning);
  const double two_theta = (mu == 0.0 && detuning == 0.0) ? 0.0 : std::atan2(mu, detuning);
  const double cg = std::cos(0.5 * gamma * t), sg = std::sin(0.5 * gamma * t);
  const double c2 = std::cos(two_theta), s2 = std::sin(two_theta);
  const cplx lead = std::exp(-kI * (0.5 * beta * t));
  const cplx lag = std::exp(kI * (0.5 * beta * t));
  const cplx u1 = lead * ((cg + kI * sg * c2) * c + s2 * sg * std::exp(-kI * phi) * d);
  const cplx u2 = lag * (-s2 * sg * std::exp(kI * phi) * c + (cg - kI * sg * c2) * d);
  return {u1, u2};
}

BlockAmplitudes rwa_from(const RwaSetup& setup, double t, double c0, double s0, AmplitudeLabel label) {
  check_drive(setup.drive);
  const cplx lam = std::exp(-kI * (0.25 * integral(setup.lambda_z, t)));
  BlockAmplitudes b;
  b.subspace = Subspace::I;
  b.label = label;
  if (setup.mode == RwaMode::lambda_drive) {
    const auto u = rwa_core(setup.static_value, setup.drive, c0, s0, t);
    b.a1 = lam * u[0];
    b.a2 = lam * u[1];
  } else {
    // In the basis (|++> +- |-->)/sqrt2 the roles of field and coupling swap.
    const double r = 1.0 / std::sqrt(2.0);
    const auto u = rwa_core(setup.static_value, setup.drive, r * (c0 + s0), r * (c0 - s0), t);
    b.a1 = lam * r * (u[0] + u[1]);
    b.a2 = lam * r * (u[0] - u[1]);
  }
  return b;
}

}  // namespace

RwaParameters rwa_parameters(const RwaSetup& setup) {
  RwaParameters p;
  p.detuning = setup.drive.frequency - 2.0 * setup.static_value;
  p.gamma = std::hypot(setup.drive.amplitude, p.detuning);
  p.theta = (setup.drive.amplitude == 0.0 && p.detuning == 0.0) ? 0.0 : 0.5 * std::atan2(setup.drive.amplitude, p.detuning);
  return p;
}

ModelParams rwa_model(const RwaSetup& setup) {
  ModelParams p;
  const DriveProfile drive = DriveProfile::sinusoid(setup.drive.amplitude, setup.drive.frequency, setup.drive.phase);
  if (setup.mode == RwaMode::lambda_drive) {
    p.omega_plus = DriveProfile::constant(setup.static_value);
    p.lambda_m = drive;
  } else {
    p.omega_plus = drive;
    p.lambda_m = DriveProfile::constant(setup.static_value);
  }
  p.lambda_z = setup.lambda_z;
  return p;
}

BlockAmplitudes rwa_evolve(const RwaSetup& setup, double t) {
  return rwa_from(setup, t, std::cos(setup.theta10), std::sin(setup.theta10), AmplitudeLabel::x);
}

BlockAmplitudes rwa_orthogonal(const RwaSetup& setup, double t) {
  return rwa_from(setup, t, -std::sin(setup.theta10), std::cos(setup.theta10), AmplitudeLabel::y);
}

cplx perturb_x1(double omega_plus, double t) { return std::exp(-kI * (omega_plus * t)); }

cplx perturb_x2(double omega_plus, const DriveProfile::Sinusoid& drive, double t) {
  if (drive.phase != 0.0) throw std::invalid_argument("perturb_x2: drive phase must be zero");
  const double mu = drive.amplitude, beta = drive.frequency;
  const double diff = beta - 2.0 * omega_plus, sum = beta + 2.0 * omega_plus;
  if (std::abs(diff) < kPoleTol || std::abs(sum) < kPoleTol)
    throw ResonancePole("perturb_x2: beta = 2 omega_+ is a pole of the first-order amplitude");
  const cplx bracket = std::exp(kI * (diff * t)) / diff + std::exp(-kI * (sum * t)) / sum - 1.0 / diff - 1.0 / sum;
  return 0.5 * kI * std::exp(kI * (omega_plus * t)) * mu * bracket;
}

double perturb_validity(double omega_plus, const DriveProfile::Sinusoid& drive) {
  const double diff = drive.frequency - 2.0 * omega_plus;
  if (std::abs(diff) < kPoleTol) throw ResonancePole("perturb_validity: beta = 2 omega_+");
  return std::abs(drive.amplitude / diff);
}

}  // namespace hxyz
