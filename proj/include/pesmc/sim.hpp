#pragma once

// Closed-loop time integration. Each step
//   1. samples omega and d at the step start (zero-order hold),
//   2. treats alpha v and the boundary flux explicitly, the flux entering node n
//      through the ghost value u_{n+1} = u_{n-1} + 2 h (omega + d),
//   3. advances u_xx - rho u by Crank-Nicolson (one tridiagonal solve),
//   4. re-solves the elliptic constraint for v at the new time.

#include <memory>
#include <optional>

#include "pesmc/control.hpp"
#include "pesmc/elliptic.hpp"
#include "pesmc/sim_config.hpp"
#include "pesmc/trace.hpp"

namespace pesmc {

struct SimState {
  double t = 0.0;
  Field u;
  Field v;
  double omega = 0.0;
  double d = 0.0;
  double s = 0.0;
};

class DivergenceError : public Error {
 public:
  DivergenceError(double t, std::shared_ptr<const SimTrace> partial);
  double time() const noexcept { return time_; }
  /// Trace recorded up to the last finite state.
  const SimTrace& partial_trace() const noexcept { return *partial_; }

 private:
  double time_;
  std::shared_ptr<const SimTrace> partial_;
};

struct StepInputs {
  double s = 0.0;
  double remainder = 0.0;
  double omega = 0.0;
  double d = 0.0;
};

class Integrator {
 public:
  explicit Integrator(const SimConfig& cfg);

  const SimConfig& config() const noexcept { return cfg_; }
  const GridPtr& grid() const noexcept { return grid_; }
  const EllipticSystem& elliptic() const noexcept { return elliptic_; }
  const std::optional<ControllerConfig>& controller() const noexcept { return controller_; }

  /// u0 from the config, v0 = K u0.
  SimState initial_state() const;

  /// Sliding value, remainder, control and disturbance at the state's time.
  /// Open-loop runs report s with psi = 1 and omega = 0.
  StepInputs sample(const SimState& state) const;

  /// Advances by dt (the configured step when dt is omitted). Throws
  /// DivergenceError with an empty partial trace on non-finite values.
  SimState step(const SimState& state, std::optional<double> dt = std::nullopt) const;

  /// Advances with inputs already sampled at the state's time.
  SimState step(const SimState& state, const StepInputs& in, double dt) const;

 private:

  SimConfig cfg_;
  GridPtr grid_;
  EllipticSystem elliptic_;
  std::optional<ControllerConfig> controller_;
  TestFunction default_psi_;
};

SimState step(const SimState& state, const SimConfig& cfg);

/// Throws DivergenceError carrying the trace recorded so far.
SimTrace run(const SimConfig& cfg);

/// First recorded time after which |s| stays within band; nullopt if the last
/// sample is outside the band.
std::optional<double> detect_reaching(const SimTrace& trace, double band);

}  // namespace pesmc
