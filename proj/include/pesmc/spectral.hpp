#pragma once

// Closed-form modal analysis of the uncontrolled reduced operator
//   A = d2/dx2 - rho I + alpha beta (gamma I - d2/dx2)^{-1}
// with homogeneous Neumann conditions. Its eigenfunctions are cos(n pi x).

#include <utility>
#include <vector>

#include "pesmc/core.hpp"

namespace pesmc {

inline constexpr int kDefaultModeCount = 32;

/// lambda_n = -rho + alpha beta / (gamma + (n pi)^2) - (n pi)^2
double eigenvalue(const PhysicalParams& params, int n);

/// beta / (gamma + (n pi)^2): the gain of the coupling operator on mode n.
double coupling_mode_gain(const PhysicalParams& params, int n);

struct ModalReport {
  std::vector<std::pair<int, double>> eigenvalues;
  double dominant = 0.0;  // lambda_0
  bool stable = false;
  double margin = 0.0;    // rho - alpha beta / gamma
  /// Set when alpha beta < 0: lambda_0 need not dominate, and `stable` is
  /// taken from the largest listed eigenvalue instead of the margin.
  bool outside_dominant_regime = false;
};

ModalReport modal_report(const PhysicalParams& params, int n_max = kDefaultModeCount);

/// e^{lambda_n t} cos(n pi x): the exact open-loop solution from u0 = cos(n pi x).
Field analytic_mode_solution(const PhysicalParams& params, int n, double t, GridPtr grid);

/// Once the sliding manifold is reached the state decays exponentially
/// provided rho > alpha C, where C bounds <u, K u> / |u|^2. For gamma > 0 the
/// bound is the largest coupling mode gain, beta / gamma (or 0 when beta < 0).
struct SlidingDecayCondition {
  double bound = 0.0;
  bool holds = false;
};

SlidingDecayCondition sliding_decay_condition(const PhysicalParams& params);

}  // namespace pesmc
