#include "pesmc/control.hpp"

#include <algorithm>
#include <cmath>

namespace pesmc {

TestFunction::TestFunction(PsiSpec::Kind kind, Field samples, Field derivative,
                           double boundary_value)
    : kind_(kind),
      samples_(std::move(samples)),
      derivative_(std::move(derivative)),
      boundary_value_(boundary_value),
      unit_samples_(samples_),
      unit_derivative_(derivative_) {
  require_same_grid(samples_, derivative_);
  if (!samples_.all_finite() || !derivative_.all_finite() || !std::isfinite(boundary_value_)) {
    throw Error(ErrorKind::InvalidArgument, "test function has non-finite samples");
  }
  if (boundary_value_ == 0.0) {
    throw Error(ErrorKind::InvalidArgument, "test function must not vanish at x = 1");
  }
  // Divide rather than multiply by 1/psi(1): c psi / (c psi(1)) then reproduces
  // psi / psi(1) exactly whenever c psi is exact.
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    unit_samples_[i] = samples_[i] / boundary_value_;
    unit_derivative_[i] = derivative_[i] / boundary_value_;
  }
}

TestFunction TestFunction::constant_one(GridPtr grid) {
  return TestFunction(PsiSpec::Kind::ConstantOne, Field::constant(grid, 1.0),
                      Field::constant(grid, 0.0), 1.0);
}

TestFunction TestFunction::polynomial(GridPtr grid, std::vector<double> coefficients) {
  if (coefficients.empty()) {
    throw Error(ErrorKind::InvalidArgument, "polynomial test function needs coefficients");
  }
  auto value = [&](double x) {
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  auto slope = [&](double x) {
    double acc = 0.0;
    for (std::size_t k = coefficients.size(); k-- > 1;) acc = acc * x + k * coefficients[k];
    return acc;
  };
  return TestFunction(PsiSpec::Kind::Polynomial, Field::sample(grid, value),
                      Field::sample(grid, slope), value(1.0));
}

TestFunction TestFunction::tabulated(Field samples) {
  Field d = derivative(samples);
  const double at_one = samples.values().back();
  return TestFunction(PsiSpec::Kind::Tabulated, std::move(samples), std::move(d), at_one);
}

TestFunction TestFunction::from_spec(const PsiSpec& spec, GridPtr grid) {
  switch (spec.kind) {
    case PsiSpec::Kind::ConstantOne: return constant_one(std::move(grid));
    case PsiSpec::Kind::Polynomial: return polynomial(std::move(grid), spec.values);
    case PsiSpec::Kind::Tabulated: return tabulated(Field(std::move(grid), spec.values));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown test function kind");
}

TestFunction TestFunction::scaled(double c) const {
  if (c == 0.0 || !std::isfinite(c)) {
    throw Error(ErrorKind::InvalidArgument, "test function scale must be finite and nonzero");
  }
  return TestFunction(kind_, c * samples_, c * derivative_, c * boundary_value_);
}

void SignMode::validate() const {
  if (kind != Kind::Ideal && !(eps > 0.0 && std::isfinite(eps))) {
    throw Error(ErrorKind::InvalidArgument, "regularized sign needs eps > 0");
  }
}

double regularized_sign(const SignMode& mode, double s) {
  switch (mode.kind) {
    case SignMode::Kind::Ideal:
      return s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
    case SignMode::Kind::Saturation:
      return std::clamp(s / mode.eps, -1.0, 1.0);
    case SignMode::Kind::SmoothTanh:
      return std::tanh(s / mode.eps);
  }
  return 0.0;
}

void ControllerConfig::validate() const {
  if (!(gain > 0.0) || !std::isfinite(gain)) {
    throw Error(ErrorKind::InvalidArgument, "controller gain must be positive");
  }
  sign_mode.validate();
}

double sliding_value(const TestFunction& psi, const Field& u) {
  return weighted_inner(psi.samples(), u);
}

double remainder(const TestFunction& psi, const Field& u, const Field& v, double alpha) {
  require_same_grid(u, v);
  double diffusive = 0.0;
  if (psi.kind() != PsiSpec::Kind::ConstantOne) {
    diffusive = -weighted_inner(psi.derivative_samples(), derivative(u));
  }
  return diffusive + alpha * weighted_inner(psi.samples(), v);
}

double control_law(const ControllerConfig& cfg, const PhysicalParams& params, double s, double r) {
  const double psi1 = cfg.psi.boundary_value();
  // Dividing by psi(1) keeps the switching term opposing psi(1) s for either
  // sign of psi(1) and makes the law invariant under psi -> c psi.
  double omega = -cfg.gain * regularized_sign(cfg.sign_mode, s / psi1) + (params.rho / psi1) * s;
  if (cfg.law == ControlLaw::Compensated) omega -= r / psi1;
  return omega;
}

ControlSample control_output(const ControllerConfig& cfg, const PhysicalParams& params,
                             const Field& u, const Field& v) {
  // Evaluated on psi / psi(1), where the law reads
  //   omega = -K theta(s^) + rho s^ [- R^],  s^ = s / psi(1), R^ = R / psi(1).
  require_same_grid(u, v);
  const double s_unit = weighted_inner(cfg.psi.unit_samples(), u);
  double r_unit = params.alpha * weighted_inner(cfg.psi.unit_samples(), v);
  if (cfg.psi.kind() != PsiSpec::Kind::ConstantOne) {
    r_unit -= weighted_inner(cfg.psi.unit_derivative_samples(), derivative(u));
  }
  ControlSample out;
  out.omega = -cfg.gain * regularized_sign(cfg.sign_mode, s_unit) + params.rho * s_unit;
  if (cfg.law == ControlLaw::Compensated) out.omega -= r_unit;
  const double psi1 = cfg.psi.boundary_value();
  out.s = psi1 * s_unit;
  out.remainder = psi1 * r_unit;
  return out;
}

GainCertificate gain_certificate(double gain, double psi_at_one, double d_max, double r_max,
                                 double s0) {
  if (d_max < 0.0 || r_max < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "d_max and r_max must be non-negative");
  }
  if (psi_at_one == 0.0) throw Error(ErrorKind::InvalidArgument, "psi(1) must be nonzero");
  const double p = std::abs(psi_at_one);
  GainCertificate c;
  c.d_max = d_max;
  c.r_max = r_max;
  c.required_gain = (p * d_max + r_max) / p;
  c.eta = gain * p - (p * d_max + r_max);
  c.satisfied = c.eta > 0.0;
  if (c.satisfied) c.settling_bound = std::abs(s0) / c.eta;
  return c;
}

GainCertificate gain_certificate(const ControllerConfig& cfg, double d_max, double r_max,
                                 double s0) {
  return gain_certificate(cfg.gain, cfg.psi.boundary_value(), d_max, r_max, s0);
}

}  // namespace pesmc
