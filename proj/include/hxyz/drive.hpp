#pragma once

// Scalar drive profiles: time-dependent couplings and fields with exact
// evaluation and closed-form definite integrals.

#include <functional>
#include <memory>
#include <variant>
#include <vector>

namespace hxyz {

class DriveProfile {
 public:
  struct Constant {
    double value = 0.0;
  };
  // amplitude * sin(frequency * t + phase); frequency != 0.
  struct Sinusoid {
    double amplitude = 0.0;
    double frequency = 1.0;
    double phase = 0.0;
  };
  struct Scaled {
    double factor = 1.0;
    std::shared_ptr<const DriveProfile> base;
  };
  // Linear combination; used to move between (lambda_x, lambda_y, omega_1,
  // omega_2) and the combined (lambda_p, lambda_m, omega_+, omega_-) form.
  struct Sum {
    std::vector<DriveProfile> terms;
  };

  DriveProfile() : rep_(Constant{}) {}

  static DriveProfile constant(double value);
  static DriveProfile sinusoid(double amplitude, double frequency, double phase = 0.0);
  static DriveProfile scaled(double factor, const DriveProfile& base);
  static DriveProfile sum(std::vector<DriveProfile> terms);

  bool is_constant() const;
  bool is_zero() const;
  const Sinusoid* as_sinusoid() const { return std::get_if<Sinusoid>(&rep_); }
  const Constant* as_constant() const { return std::get_if<Constant>(&rep_); }
  const Scaled* as_scaled() const { return std::get_if<Scaled>(&rep_); }
  const Sum* as_sum() const { return std::get_if<Sum>(&rep_); }

  // Angular frequencies of every sinusoidal component.
  std::vector<double> frequencies() const;

 private:
  using Rep = std::variant<Constant, Sinusoid, Scaled, Sum>;
  explicit DriveProfile(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;

  friend double evaluate(const DriveProfile& p, double t);
  friend double integral(const DriveProfile& p, double t);
  friend double derivative(const DriveProfile& p, double t);
};

double evaluate(const DriveProfile& p, double t);

// Exact integral over [0, t].
double integral(const DriveProfile& p, double t);

double derivative(const DriveProfile& p, double t);

// Adaptive Simpson quadrature of f over [t0, t1]; estimated error <= tol.
// Throws NonConvergence when the subdivision depth limit is reached.
double quadrature(const std::function<double(double)>& f, double t0, double t1, double tol,
                  int max_depth = 50);

}  // namespace hxyz
