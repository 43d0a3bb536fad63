#include "pesmc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pesmc {

double coupling_mode_gain(const PhysicalParams& params, int n) {
  const double k2 = (n * std::numbers::pi) * (n * std::numbers::pi);
  return params.beta / (params.gamma + k2);
}

double eigenvalue(const PhysicalParams& params, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "mode index must be non-negative");
  const double k2 = (n * std::numbers::pi) * (n * std::numbers::pi);
  return -params.rho + params.alpha * params.beta / (params.gamma + k2) - k2;
}

ModalReport modal_report(const PhysicalParams& params, int n_max) {
  params.validate();
  if (n_max < 0) throw Error(ErrorKind::InvalidArgument, "n_max must be non-negative");
  ModalReport report;
  report.eigenvalues.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) report.eigenvalues.emplace_back(n, eigenvalue(params, n));
  report.dominant = report.eigenvalues.front().second;
  report.margin = params.rho - params.alpha * params.beta / params.gamma;
  if (params.alpha * params.beta >= 0.0) {
    report.stable = report.margin > 0.0;
  } else {
    report.outside_dominant_regime = true;
    double largest = report.dominant;
    for (const auto& [n, lambda] : report.eigenvalues) largest = std::max(largest, lambda);
    report.stable = largest < 0.0;
  }
  return report;
}

Field analytic_mode_solution(const PhysicalParams& params, int n, double t, GridPtr grid) {
  if (t < 0.0) throw Error(ErrorKind::Domain, "analytic mode solution needs t >= 0");
  const double amplitude = std::exp(eigenvalue(params, n) * t);
  const double freq = n * std::numbers::pi;
  return Field::sample(std::move(grid),
                       [=](double x) { return amplitude * std::cos(freq * x); });
}

SlidingDecayCondition sliding_decay_condition(const PhysicalParams& params) {
  params.validate();
  SlidingDecayCondition c;
  c.bound = std::max(0.0, params.beta / params.gamma);
  c.holds = params.rho > params.alpha * c.bound;
  return c;
}

}  // namespace pesmc
