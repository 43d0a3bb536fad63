#include "pesmc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pesmc/kernels.hpp"

namespace pesmc {

Field InitialProfile::materialize(GridPtr grid) const {
  switch (kind) {
    case Kind::SinPi:
      return Field::sample(std::move(grid), [](double x) { return std::sin(std::numbers::pi * x); });
    case Kind::CosMode: {
      const double freq = mode * std::numbers::pi;
      return Field::sample(std::move(grid), [freq](double x) { return std::cos(freq * x); });
    }
    case Kind::Constant: return Field::constant(std::move(grid), value);
    case Kind::Tabulated: return Field(std::move(grid), values);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown initial profile");
}

ControllerConfig ControllerSpec::materialize(GridPtr grid) const {
  ControllerConfig cfg{gain, law, sign_mode, TestFunction::from_spec(psi, std::move(grid))};
  cfg.validate();
  return cfg;
}

namespace {
[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw Error(ErrorKind::Validation, field + ": " + why);
}
}  // namespace

void SimConfig::validate() const {
  try {
    params.validate();
  } catch (const Error& e) {
    invalid("params", e.what());
  }
  if (grid_n < Grid::kMinIntervals) invalid("grid_n", "must be at least 8");
  if (!(dt > 0.0) || !std::isfinite(dt)) invalid("dt", "must be positive");
  if (!(t_final > 0.0) || !std::isfinite(t_final)) invalid("t_final", "must be positive");
  if (dt > t_final) invalid("dt", "must not exceed t_final");
  const double explicit_rate =
      std::max(std::abs(params.rho), params.alpha * params.beta / params.gamma);
  if (dt * explicit_rate > 0.5) invalid("dt", "dt * max(|rho|, alpha beta / gamma) exceeds 0.5");
  if (snapshot_stride < 0) invalid("snapshot_stride", "must be non-negative");
  try {
    disturbance.validate();
  } catch (const Error& e) {
    invalid("disturbance", e.what());
  }
  const auto nodes = static_cast<std::size_t>(grid_n) + 1;
  if (u0.kind == InitialProfile::Kind::Tabulated && u0.values.size() != nodes) {
    invalid("u0", "tabulated profile needs " + std::to_string(nodes) + " values");
  }
  if (u0.kind == InitialProfile::Kind::CosMode && u0.mode < 0) invalid("u0", "mode must be >= 0");
  if (controller) {
    if (controller->psi.kind == PsiSpec::Kind::Tabulated && controller->psi.values.size() != nodes) {
      invalid("controller.psi", "tabulated psi needs " + std::to_string(nodes) + " values");
    }
    try {
      controller->materialize(build_grid(grid_n));
    } catch (const Error& e) {
      invalid("controller", e.what());
    }
  }
}

const std::vector<double>& SimTrace::series(std::string_view name) const {
  if (name == "s") return s;
  if (name == "omega") return omega;
  if (name == "d") return d;
  if (name == "norm_u_l2") return norm_u_l2;
  if (name == "norm_v_l2") return norm_v_l2;
  if (name == "norm_u_h1") return norm_u_h1;
  if (name == "remainder") return remainder;
  throw Error(ErrorKind::InvalidArgument, "unknown trace series '" + std::string(name) + "'");
}

DivergenceError::DivergenceError(double t, std::shared_ptr<const SimTrace> partial)
    : Error(ErrorKind::Divergence, "solution diverged at t = " + std::to_string(t)),
      time_(t),
      partial_(std::move(partial)) {}

Integrator::Integrator(const SimConfig& cfg)
    : cfg_(cfg),
      grid_((cfg.validate(), build_grid(cfg.grid_n))),
      elliptic_(grid_, cfg.params.gamma),
      default_psi_(TestFunction::constant_one(grid_)) {
  if (cfg_.controller) controller_ = cfg_.controller->materialize(grid_);
}

SimState Integrator::initial_state() const {
  Field u0 = cfg_.u0.materialize(grid_);
  Field v0 = elliptic_.apply_K(u0, cfg_.params.beta);
  SimState state{0.0, std::move(u0), std::move(v0)};
  const StepInputs in = sample(state);
  state.s = in.s;
  state.omega = in.omega;
  state.d = in.d;
  return state;
}

StepInputs Integrator::sample(const SimState& state) const {
  StepInputs in;
  in.d = evaluate(cfg_.disturbance, state.t);
  if (controller_) {
    const ControlSample c = control_output(*controller_, cfg_.params, state.u, state.v);
    in.s = c.s;
    in.remainder = c.remainder;
    in.omega = c.omega;
  } else {
    in.s = sliding_value(default_psi_, state.u);
  }
  return in;
}

SimState Integrator::step(const SimState& state, const StepInputs& in, double dt) const {
  const double h = grid_->h();
  const double inv_h2 = 1.0 / (h * h);
  const double rho = cfg_.params.rho;
  const std::size_t last = state.u.size() - 1;

  // Explicit half of Crank-Nicolson, (I + dt/2 L) u with L = D2 - rho I.
  const double off = 0.5 * dt * inv_h2;
  const double mid_rhs = 1.0 - dt * inv_h2 - 0.5 * dt * rho;
  const auto u = state.u.values();
  std::vector<double> rhs(u.size());
  const auto& k = kernels::active();
  k.stencil3(u, off, mid_rhs, off, rhs);
  rhs[0] = mid_rhs * u[0] + 2.0 * off * u[1];
  rhs[last] = 2.0 * off * u[last - 1] + mid_rhs * u[last];

  // Explicit coupling and boundary flux, both frozen at the step start.
  k.axpy(dt * cfg_.params.alpha, state.v.values(), rhs);
  rhs[last] += dt * 2.0 * (in.omega + in.d) / h;

  // Implicit half, (I - dt/2 L).
  const double mid_lhs = 1.0 + dt * inv_h2 + 0.5 * dt * rho;
  std::vector<double> lower(u.size(), -off), diag(u.size(), mid_lhs), upper(u.size(), -off);
  upper[0] = -2.0 * off;
  lower[last] = -2.0 * off;

  Field u_next(grid_, thomas_solve(lower, diag, upper, rhs));
  Field v_next = elliptic_.apply_K(u_next, cfg_.params.beta);
  SimState next{state.t + dt, std::move(u_next), std::move(v_next), in.omega, in.d, in.s};
  if (!next.u.all_finite() || !next.v.all_finite()) {
    throw DivergenceError(next.t, std::make_shared<const SimTrace>());
  }
  return next;
}

SimState Integrator::step(const SimState& state, std::optional<double> dt) const {
  return step(state, sample(state), dt.value_or(cfg_.dt));
}

SimState step(const SimState& state, const SimConfig& cfg) { return Integrator(cfg).step(state); }

namespace {

void record(SimTrace& trace, const SimState& state, const StepInputs& in, bool closed_loop) {
  trace.times.push_back(state.t);
  trace.s.push_back(in.s);
  trace.omega.push_back(in.omega);
  trace.d.push_back(in.d);
  trace.norm_u_l2.push_back(l2_norm(state.u));
  trace.norm_v_l2.push_back(l2_norm(state.v));
  trace.norm_u_h1.push_back(h1_norm(state.u));
  if (closed_loop) trace.remainder.push_back(in.remainder);
}

}  // namespace

SimTrace run(const SimConfig& cfg) {
  const Integrator integrator(cfg);
  SimTrace trace;
  trace.config = cfg;
  const bool closed_loop = integrator.controller().has_value();

  // Step count: t_final / dt rounded when it is (nearly) an integer, otherwise
  // one extra shortened step lands exactly on t_final.
  const double ratio = cfg.t_final / cfg.dt;
  auto steps = static_cast<long long>(std::llround(ratio));
  if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * ratio) {
    steps = static_cast<long long>(std::ceil(ratio));
  }
  trace.times.reserve(static_cast<std::size_t>(steps) + 1);

  SimState state = integrator.initial_state();
  for (long long k = 0;; ++k) {
    StepInputs in = integrator.sample(state);
    record(trace, state, in, closed_loop);
    if (cfg.snapshot_stride > 0 && k % cfg.snapshot_stride == 0) {
      trace.snapshots.push_back({state.t, state.u, state.v});
    }
    if (k == steps) break;
    const double t_next = (k + 1 == steps) ? cfg.t_final : static_cast<double>(k + 1) * cfg.dt;
    try {
      SimState next = integrator.step(state, in, t_next - state.t);
      next.t = t_next;
      state = std::move(next);
    } catch (const DivergenceError& e) {
      throw DivergenceError(e.time(), std::make_shared<const SimTrace>(std::move(trace)));
    }
  }
  return trace;
}

std::optional<double> detect_reaching(const SimTrace& trace, double band) {
  if (!(band > 0.0)) throw Error(ErrorKind::InvalidArgument, "reaching band must be positive");
  std::optional<double> reached;
  for (std::size_t i = trace.size(); i-- > 0;) {
    if (std::abs(trace.s[i]) > band) break;
    reached = trace.times[i];
  }
  return reached;
}

}  // namespace pesmc
