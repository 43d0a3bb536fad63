#pragma once

#include <optional>
#include <vector>

#include "pesmc/control.hpp"
#include "pesmc/core.hpp"
#include "pesmc/disturbance.hpp"

namespace pesmc {

struct InitialProfile {
  enum class Kind { SinPi, CosMode, Constant, Tabulated };
  Kind kind = Kind::SinPi;
  int mode = 0;                // CosMode: cos(mode pi x)
  double value = 0.0;          // Constant
  std::vector<double> values;  // Tabulated, one per node

  Field materialize(GridPtr grid) const;
};

/// Grid-independent controller description; materialized once the grid exists.
struct ControllerSpec {
  double gain = 2.0;
  ControlLaw law = ControlLaw::Basic;
  SignMode sign_mode = SignMode::saturation(1e-3);
  PsiSpec psi;

  ControllerConfig materialize(GridPtr grid) const;
};

struct SimConfig {
  PhysicalParams params;
  int grid_n = 200;
  double dt = 1e-4;
  double t_final = 1.0;
  std::optional<ControllerSpec> controller;  // nullopt: open loop, omega = 0
  DisturbanceModel disturbance;
  InitialProfile u0;
  int snapshot_stride = 0;

  /// Checks every field, including dt <= t_final and the guard on the
  /// explicitly treated terms, dt * max(|rho|, alpha beta / gamma) <= 0.5.
  /// Throws Validation naming the offending field.
  void validate() const;
};

}  // namespace pesmc
