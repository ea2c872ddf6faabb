#include "hxyz/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hxyz/errors.hpp"

namespace hxyz {

namespace {

constexpr double kQuadTol = 1e-10;

bool first_block(Eigenstate e) { return e == Eigenstate::phi1 || e == Eigenstate::phi2; }
bool upper_state(Eigenstate e) { return e == Eigenstate::phi1 || e == Eigenstate::phi3; }

AmplitudeLabel label_of(Eigenstate e) {
  switch (e) {
    case Eigenstate::phi1: return AmplitudeLabel::x;
    case Eigenstate::phi2: return AmplitudeLabel::y;
    case Eigenstate::phi3: return AmplitudeLabel::z;
    case Eigenstate::phi4: return AmplitudeLabel::w;
  }
  return AmplitudeLabel::x;
}

// exp(-i * sign * int lambda_z/4), sign = +1 in subspace I and -1 in II.
cplx lambda_phase(const DriveProfile& lambda_z, double t, Subspace s) {
  const double sign = s == Subspace::I ? 1.0 : -1.0;
  return std::exp(-kI * (sign * 0.25 * integral(lambda_z, t)));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

Subspace subspace_of(Eigenstate e) { return first_block(e) ? Subspace::I : Subspace::II; }

BlockAmplitudes eigenstate_amplitudes(Eigenstate e, double theta0) {
  BlockAmplitudes b;
  b.subspace = subspace_of(e);
  b.label = label_of(e);
  if (upper_state(e)) {
    b.a1 = std::cos(theta0);
    b.a2 = std::sin(theta0);
  } else {
    b.a1 = -std::sin(theta0);
    b.a2 = std::cos(theta0);
  }
  return b;
}

// ---------------------------------------------------------------------------
// First integrability condition

Ic1Setup Ic1Setup::from_ratios(double k, double k_second, PhaseConvention phase) {
  Ic1Setup s;
  s.k = k;
  s.k_second = k_second;
  s.theta10 = 0.5 * std::atan(k);
  s.theta20 = 0.5 * std::atan(k_second);
  s.phase = phase;
  return s;
}

ModelParams ic1_model(const DriveProfile& omega_plus, const DriveProfile& omega_minus,
                      const DriveProfile& lambda_z, double k, double k_second) {
  ModelParams p;
  p.omega_plus = omega_plus;
  p.omega_minus = omega_minus;
  p.lambda_z = lambda_z;
  p.lambda_m = DriveProfile::scaled(k, omega_plus);
  p.lambda_p = DriveProfile::scaled(k_second, omega_minus);
  return p;
}

Ic1Propagator::Ic1Propagator(Ic1Setup setup, ModelParams params, double t_end)
    : setup_(setup), params_(std::move(params)) {
  if (std::abs(std::tan(2.0 * setup_.theta10) - setup_.k) > 1e-12 * std::max(1.0, std::abs(setup_.k)) ||
      std::abs(std::tan(2.0 * setup_.theta20) - setup_.k_second) > 1e-12 * std::max(1.0, std::abs(setup_.k_second)))
    throw NotIntegrable("IC1 setup: mixing angles inconsistent with the proportionality constants");

  constexpr int kSamples = 1000;
  for (int i = 0; i < kSamples; ++i) {
    const double t = t_end * static_cast<double>(i) / (kSamples - 1);
    const double pairs[2][2] = {
        {evaluate(params_.lambda_m, t), setup_.k * evaluate(params_.omega_plus, t)},
        {evaluate(params_.lambda_p, t), setup_.k_second * evaluate(params_.omega_minus, t)}};
    for (int b = 0; b < 2; ++b) {
      const double coupling = pairs[b][0], expected = pairs[b][1];
      const double scale = std::max(std::abs(coupling), std::abs(expected));
      if (std::abs(coupling - expected) > 1e-10 * scale) {
        throw NotIntegrable(std::string("IC1: ") + (b == 0 ? "lambda_m != k * omega_+" : "lambda_p != k_second * omega_-") +
                            " at t=" + fmt(t));
      }
    }
  }
}

double Ic1Propagator::rotation_angle(double t, Subspace s) const {
  const bool first = s == Subspace::I;
  const DriveProfile& field = first ? params_.omega_plus : params_.omega_minus;
  const DriveProfile& coupling = first ? params_.lambda_m : params_.lambda_p;
  if (setup_.phase == PhaseConvention::signed_field) {
    const double k = first ? setup_.k : setup_.k_second;
    return std::sqrt(1.0 + k * k) * integral(field, t);
  }
  return quadrature([&](double u) { return std::hypot(evaluate(field, u), evaluate(coupling, u)); }, 0.0, t,
                    kQuadTol);
}

std::vector<double> Ic1Propagator::rotation_angles(std::span<const double> times, Subspace s) const {
  std::vector<double> out;
  out.reserve(times.size());
  if (setup_.phase == PhaseConvention::signed_field) {
    for (double t : times) out.push_back(rotation_angle(t, s));
    return out;
  }
  const bool first = s == Subspace::I;
  const DriveProfile& field = first ? params_.omega_plus : params_.omega_minus;
  const DriveProfile& coupling = first ? params_.lambda_m : params_.lambda_p;
  const auto eta = [&](double u) { return std::hypot(evaluate(field, u), evaluate(coupling, u)); };
  double acc = 0.0, prev = 0.0;
  for (double t : times) {
    acc += quadrature(eta, prev, t, kQuadTol);
    prev = t;
    out.push_back(acc);
  }
  return out;
}

cplx Ic1Propagator::phase(double t, int j) const {
  if (j < 1 || j > 4) throw std::invalid_argument("ic1 phase index must be 1..4");
  const Subspace s = j <= 2 ? Subspace::I : Subspace::II;
  const double sign = (j == 1 || j == 3) ? 1.0 : -1.0;
  return lambda_phase(params_.lambda_z, t, s) * std::exp(-kI * (sign * rotation_angle(t, s)));
}

BlockAmplitudes Ic1Propagator::evolve_with_angle(double t, double angle, Eigenstate initial) const {
  const Subspace s = subspace_of(initial);
  const double theta0 = s == Subspace::I ? setup_.theta10 : setup_.theta20;
  const double sign = upper_state(initial) ? 1.0 : -1.0;
  const cplx phase = lambda_phase(params_.lambda_z, t, s) * std::exp(-kI * (sign * angle));
  BlockAmplitudes b = eigenstate_amplitudes(initial, theta0);
  b.a1 *= phase;
  b.a2 *= phase;
  return b;
}

BlockAmplitudes Ic1Propagator::evolve(double t, Eigenstate initial) const {
  return evolve_with_angle(t, rotation_angle(t, subspace_of(initial)), initial);
}

cplx ic1_phase(const Ic1Setup& setup, const ModelParams& params, double t, int j) {
  return Ic1Propagator(setup, params, t).phase(t, j);
}

BlockAmplitudes ic1_evolve(const Ic1Setup& setup, const ModelParams& params, double t, Eigenstate initial) {
  return Ic1Propagator(setup, params, t).evolve(t, initial);
}

// ---------------------------------------------------------------------------
// Second integrability condition

namespace {

struct BlockView {
  const DriveProfile& coupling;
  double rate;  // kappa or chi
  double theta0;
  const char* coupling_name;
  const char* rate_name;
  const char* angle_name;
};

BlockView view(const Ic2Setup& s, Subspace sub) {
  if (sub == Subspace::I) return {s.lambda_m, s.kappa, s.theta10, "lambda_m", "kappa", "theta10"};
  return {s.lambda_p, s.chi, s.theta20, "lambda_p", "chi", "theta20"};
}

// 1 - cos(2 theta) and 1 + cos(2 theta), computed without cancellation at the
// branch ends.
struct CosineSplit {
  double one_minus;
  double one_plus;
};

CosineSplit cosine_split(const BlockView& v, double t) {
  const double drift = 2.0 * v.rate * integral(v.coupling, t);
  const double s0 = std::sin(v.theta0), c0 = std::cos(v.theta0);
  return {2.0 * s0 * s0 + drift, 2.0 * c0 * c0 - drift};
}

constexpr double kEdge = 1e-12;

bool at_lower_edge(double theta0) { return std::abs(1.0 - std::cos(2.0 * theta0)) <= kEdge; }
bool at_upper_edge(double theta0) { return std::abs(1.0 + std::cos(2.0 * theta0)) <= kEdge; }

}  // namespace

Admissibility ic2_admissible(const Ic2Setup& setup, Subspace s) {
  const BlockView v = view(setup, s);
  if (v.coupling.is_zero()) return {};
  if (v.rate == 0.0) return {false, std::string(v.rate_name) + " != 0"};
  const auto* sin = v.coupling.as_sinusoid();
  if (!sin) return {false, std::string(v.coupling_name) + " must be a sinusoid (or zero)"};

  const double mu = sin->amplitude, beta = sin->frequency, phi = sin->phase;
  const double c0 = std::cos(2.0 * v.theta0);
  const bool lower = at_lower_edge(v.theta0), upper = at_upper_edge(v.theta0);
  if (lower || upper) {
    const std::string edge = std::string(v.angle_name) + (lower ? "=0" : "=pi/2");
    if (phi != 0.0) return {false, edge + " requires phi = 0 (initial phase of " + v.coupling_name + ")"};
    const double ratio = 4.0 * v.rate * mu / beta;
    if (std::abs(ratio) > 1.0)
      return {false, edge + " requires |4 " + v.rate_name + " mu / beta| <= 1, got " + fmt(std::abs(ratio))};
    // cos(2 theta) starts at +-1 and must move inward.
    if (lower ? ratio < 0.0 : ratio > 0.0)
      return {false, edge + " requires " + (lower ? "" : "-") + v.rate_name + " mu / beta >= 0"};
    return {};
  }
  const double lhs = std::abs(beta / (2.0 * v.rate * mu));
  const double rhs = std::max(2.0 / (1.0 + c0), 2.0 / (1.0 - c0));
  // Equality is admissible; allow for rounding in beta/(2 kappa mu).
  if (lhs < rhs * (1.0 - 1e-12))
    return {false, std::string("|beta/(2 ") + v.rate_name + " mu)| >= max(2/(1+cos 2" + v.angle_name + "), 2/(1-cos 2" +
                       v.angle_name + ")) violated: " + fmt(lhs) + " < " + fmt(rhs)};
  return {};
}

Admissibility ic2_admissible(const Ic2Setup& setup) {
  auto first = ic2_admissible(setup, Subspace::I);
  if (!first) return first;
  return ic2_admissible(setup, Subspace::II);
}

double ic2_theta(const Ic2Setup& setup, double t, Subspace s) {
  const BlockView v = view(setup, s);
  if (v.coupling.is_zero()) return v.theta0;
  const CosineSplit cs = cosine_split(v, t);
  if (cs.one_minus < -kEdge || cs.one_plus < -kEdge)
    throw BranchExit("ic2_theta: cos(2 theta) left [-1, 1] at t=" + fmt(t));
  const double p = std::max(cs.one_minus, 0.0), m = std::max(cs.one_plus, 0.0);
  return 0.5 * std::atan2(std::sqrt(p * m), 0.5 * (m - p));
}

double ic2_delta(const Ic2Setup& setup, double t, Subspace s) {
  const BlockView v = view(setup, s);
  if (v.coupling.is_zero()) return 0.0;
  return (ic2_theta(setup, t, s) - v.theta0) * std::sqrt(1.0 + 1.0 / (v.rate * v.rate));
}

std::vector<double> ic2_breakpoints(const Ic2Setup& setup, double t_end, Subspace s) {
  const BlockView v = view(setup, s);
  std::vector<double> out;
  const auto* sin = v.coupling.as_sinusoid();
  if (!sin || sin->amplitude == 0.0) return out;
  if (!(at_lower_edge(v.theta0) || at_upper_edge(v.theta0)) || sin->phase != 0.0) return out;
  // The coupling integral returns to zero once per drive period.
  const double period = 2.0 * std::numbers::pi / std::abs(sin->frequency);
  for (int n = 1;; ++n) {
    const double t = n * period;
    if (t >= t_end) break;
    out.push_back(t);
  }
  return out;
}

double ic2_derived_field(const Ic2Setup& setup, double t, Subspace s, Limit side) {
  const BlockView v = view(setup, s);
  if (v.coupling.is_zero()) return 0.0;
  const CosineSplit cs = cosine_split(v, t);
  const double p = std::max(cs.one_minus, 0.0), m = std::max(cs.one_plus, 0.0);
  const double cos2 = 0.5 * (m - p);
  const double sin2 = std::sqrt(p * m);

  bool jump = sin2 == 0.0;
  if (!jump && (at_lower_edge(v.theta0) || at_upper_edge(v.theta0))) {
    if (const auto* sn = v.coupling.as_sinusoid(); sn && sn->phase == 0.0) {
      const double period = 2.0 * std::numbers::pi / std::abs(sn->frequency);
      const double n = std::round(t / period);
      jump = std::abs(t - n * period) <= 1e-12 * std::max(1.0, t);
    }
  }
  if (jump) {
    // Near a touch point coupling ~ c'(t-tn) and sin 2theta ~ sqrt(2 rate c')|t-tn|.
    const double slope = derivative(v.coupling, t);
    const double magnitude = std::sqrt(std::abs(slope / (2.0 * v.rate)));
    const double right = (slope >= 0.0 ? 1.0 : -1.0) * (cos2 >= 0.0 ? 1.0 : -1.0) * magnitude;
    return side == Limit::from_right ? right : -right;
  }
  return evaluate(v.coupling, t) * cos2 / sin2;
}

BlockMatrix2 ic2_block(const Ic2Setup& setup, double t, Subspace s, Limit side) {
  const BlockView v = view(setup, s);
  return block_from_values(ic2_derived_field(setup, t, s, side), evaluate(v.coupling, t), evaluate(setup.lambda_z, t), s);
}

BlockAmplitudes ic2_evolve(const Ic2Setup& setup, double t, Eigenstate initial) {
  const Subspace s = subspace_of(initial);
  const BlockView v = view(setup, s);
  BlockAmplitudes b;
  b.subspace = s;
  b.label = label_of(initial);
  const cplx lam = lambda_phase(setup.lambda_z, t, s);
  if (v.coupling.is_zero()) {
    const BlockAmplitudes e = eigenstate_amplitudes(initial, v.theta0);
    b.a1 = lam * e.a1;
    b.a2 = lam * e.a2;
    return b;
  }

  const double theta = ic2_theta(setup, t, s);
  const double delta = (theta - v.theta0) * std::sqrt(1.0 + 1.0 / (v.rate * v.rate));
  const double bar = 1.0 / std::sqrt(1.0 + 1.0 / (v.rate * v.rate));
  const double q = bar / v.rate;
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cd = std::cos(delta), sd = std::sin(delta);

  if (upper_state(initial)) {
    const cplx rot = cd - kI * (q * sd);
    b.a1 = lam * (ct * rot + st * bar * sd);
    b.a2 = lam * (st * rot - ct * bar * sd);
  } else {
    const cplx rot = cd + kI * (q * sd);
    b.a1 = lam * (-st * rot + ct * bar * sd);
    b.a2 = lam * (ct * rot + st * bar * sd);
  }
  return b;
}

}  // namespace hxyz
