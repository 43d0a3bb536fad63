// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pesmc/config.hpp"
#include "pesmc/diagnostics.hpp"
#include "pesmc/elliptic.hpp"
#include "pesmc/sim.hpp"
#include "pesmc/spectral.hpp"
#include "test_support.hpp"

using namespace pesmc;

namespace {

const PhysicalParams kFig1{0.25, 1.0 / 3.0, 0.25, 0.5};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

SimConfig preset(const char* name) {
  return resolve_config(nlohmann::json{{"scenario", name}});
}

Outcome eigenvalues() {
  Outcome o;
  const double l0 = eigenvalue(kFig1, 0);
  const ModalReport r = modal_report(kFig1, 2);
  o.detail << "lambda_0 = " << l0 << ", stable = " << (r.stable ? "true" : "false") << " ";
  o.require(std::abs(l0 - 1.0 / 6.0) <= 1e-12, "lambda_0 = 1/6");
  o.require(std::abs(r.dominant - 1.0 / 6.0) <= 1e-12, "report dominant = 1/6");
  o.require(!r.stable, "unstable");
  return o;
}

Outcome open_loop_rate() {
  Outcome o;
  const SimConfig cfg = preset("fig1-open-loop");
  const RateFit fit = fit_rate(run(cfg), "norm_u_l2", {2.0, 6.0});
  const double rel = std::abs(fit.rate - 1.0 / 6.0) / (1.0 / 6.0);
  o.detail << "rate = " << fit.rate << ", relative error " << rel << " ";
  o.require(rel <= 0.02, "rate within 2% of 1/6");
  return o;
}

double mode_error(int mode, int n, double dt) {
  SimConfig cfg;
  cfg.params = kFig1;
  cfg.grid_n = n;
  cfg.dt = dt;
  cfg.t_final = 1.0;
  cfg.u0 = {InitialProfile::Kind::CosMode, mode};
  const Integrator integ(cfg);
  SimState s = integ.initial_state();
  const auto steps = std::llround(cfg.t_final / dt);
  for (long long k = 0; k < steps; ++k) s = integ.step(s);
  const Field exact = analytic_mode_solution(kFig1, mode, cfg.t_final, integ.grid());
  return l2_norm(s.u - exact) / l2_norm(exact);
}

Outcome analytic_modes() {
  Outcome o;
  for (int mode : {0, 1, 2}) {
    const double coarse = mode_error(mode, 200, 1e-4);
    const double fine = mode_error(mode, 400, 2.5e-5);
    const double ratio = coarse / fine;
    o.detail << "n=" << mode << ": err " << coarse << ", doubling ratio " << ratio << "; ";
    const std::string tag = "mode " + std::to_string(mode);
    o.require(coarse <= 1e-3, tag + " error <= 1e-3");
    o.require(ratio >= 3.5 && ratio <= 4.5, tag + " ratio in [3.5, 4.5]");
  }
  return o;
}

Outcome elliptic_oracle() {
  Outcome o;
  std::mt19937_64 rng(2024);
  double worst_c = 0.0, min_order = 1e9, max_order = -1e9;
  for (int trial = 0; trial < 5; ++trial) {
    const auto coeffs = testing::random_cosine_coefficients(rng, 10);
    std::vector<double> errs;
    for (int n : {100, 200, 400}) {
      const GridPtr g = build_grid(n);
      const Field u = Field::sample(g, [&](double x) { return testing::cosine_sum(coeffs, x); });
      const double e = (assemble(g, kFig1.gamma).apply_K(u, kFig1.beta) - spectral_oracle(u, kFig1, 64)).max_abs();
      errs.push_back(e);
      worst_c = std::max(worst_c, e / (g->h() * g->h()));
    }
    for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
      const double order = std::log2(errs[i] / errs[i + 1]);
      min_order = std::min(min_order, order);
      max_order = std::max(max_order, order);
    }
  }
  o.detail << "C = " << worst_c << ", orders in [" << min_order << ", " << max_order << "] ";
  o.require(min_order >= 1.7 && max_order <= 2.3, "order in [1.7, 2.3]");
  return o;
}

Outcome closed_loop_decay() {
  Outcome o;
  const SimConfig cfg = preset("fig1-closed-loop");
  const SimTrace tr = run(cfg);
  const double ru = tr.norm_u_l2.back() / tr.norm_u_l2.front();
  const double rv = tr.norm_v_l2.back() / tr.norm_v_l2.front();
  o.detail << "u ratio " << ru << ", v ratio " << rv << "; ";
  o.require(ru <= 1e-2, "norm u decays by 100");
  o.require(rv <= 1e-2, "norm v decays by 100");

  SimConfig open = cfg;
  open.controller.reset();
  open.snapshot_stride = 0;
  try {
    const SimTrace otr = run(open);
    const double growth = otr.norm_u_l2.back() / otr.norm_u_l2.front();
    o.detail << "uncontrolled growth " << growth << " ";
    o.require(growth > 1.0, "uncontrolled run grows");
  } catch (const DivergenceError& e) {
    o.detail << "uncontrolled run diverged at t = " << e.time() << " ";
  }
  return o;
}

Outcome reaching_envelope() {
  Outcome o;
  SimConfig cfg = preset("fig1-closed-loop");
  cfg.t_final = 3.0;
  cfg.snapshot_stride = 0;
  cfg.disturbance = DisturbanceModel::constant(1.0);
  const SimTrace tr = run(cfg);
  const AuditReport rep = audit_certificate(tr);
  const double eta = rep.certificate.eta;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double envelope = std::max(0.0, std::abs(tr.s.front()) - eta * tr.times[i]) + rep.band;
    worst = std::max(worst, std::abs(tr.s[i]) - envelope);
  }
  o.detail << "eta = " << eta << ", T* = " << rep.certificate.settling_bound << ", band = " << rep.band
           << ", reach = " << (rep.reaching_time ? *rep.reaching_time : -1.0)
           << ", worst envelope excess " << worst << " ";
  o.require(rep.certificate.satisfied, "certificate satisfied");
  o.require(worst <= 0.0, "|s| within envelope");
  o.require(rep.reaching_within_bound.value_or(false), "reaching time <= 1.05 T*");
  return o;
}

std::vector<double> omega_series(const SimConfig& cfg) { return run(cfg).omega; }

Outcome psi_scaling() {
  Outcome o;
  SimConfig base = preset("fig1-closed-loop");
  base.t_final = 2.0;
  base.snapshot_stride = 0;
  const std::vector<std::pair<std::vector<double>, std::string>> psis = {
      {{1.0}, "psi = 1"}, {{1.0, 0.5, -0.25}, "psi = 1 + x/2 - x^2/4"}};
  for (const auto& [coeffs, label] : psis) {
    SimConfig a = base, b = base;
    a.controller->psi = {PsiSpec::Kind::Polynomial, coeffs};
    std::vector<double> tripled = coeffs;
    for (double& c : tripled) c *= 3.0;
    b.controller->psi = {PsiSpec::Kind::Polynomial, tripled};
    const auto wa = omega_series(a), wb = omega_series(b);
    double worst = 0.0, worst_abs = 0.0, sup = 0.0;
    for (std::size_t i = 0; i < wa.size(); ++i) {
      const double scale = std::max(std::abs(wa[i]), std::abs(wb[i]));
      const double diff = std::abs(wa[i] - wb[i]);
      if (scale > 0.0) worst = std::max(worst, diff / scale);
      worst_abs = std::max(worst_abs, diff);
      sup = std::max(sup, scale);
    }
    o.detail << label << ": worst per-sample relative difference " << worst << " (max abs "
             << worst_abs << ", sup |omega| " << sup << "); ";
    o.require(worst <= 1e-12, label + " omega identical to 1e-12");
  }
  return o;
}

Outcome regularization() {
  Outcome o;
  SimConfig a = preset("fig1-closed-loop");
  a.snapshot_stride = 0;
  const double eps = a.controller->sign_mode.eps;
  SimConfig b = a;
  b.controller->sign_mode.eps = eps / 2.0;
  const Integrator ia(a), ib(b);
  SimState sa = ia.initial_state(), sb = ib.initial_state();
  double sup = 0.0;
  const auto steps = std::llround(a.t_final / a.dt);
  for (long long k = 0; k < steps; ++k) {
    sa = ia.step(sa);
    sb = ib.step(sb);
    sup = std::max(sup, l2_norm(sa.u - sb.u));
  }
  const double limit = 5.0 * eps * (a.controller->gain + a.disturbance.bound());
  o.detail << "sup L2 distance " << sup << " vs limit " << limit << " ";
  o.require(sup <= limit, "distance within 5 eps (K + d_max)");
  return o;
}

Outcome certificate_formulas() {
  Outcome o;
  struct Case {
    double gain, psi1, d_max, r_max, s0;
    double required, eta, settling;
    bool satisfied;
  };
  const Case cases[] = {
      {2.0, 1.0, 1.0, 0.5, 0.5, 1.5, 0.5, 1.0, true},
      {3.0, -2.0, 0.25, 1.0, 0.9, 0.75, 4.5, 0.2, true},
      {1.0, 0.5, 0.5, 0.125, -0.375, 0.75, 0.125, 3.0, true},
      {1.0, 1.0, 1.0, 0.5, 1.0, 1.5, -0.5, std::numeric_limits<double>::infinity(), false},
  };
  for (const Case& c : cases) {
    const GainCertificate g = gain_certificate(c.gain, c.psi1, c.d_max, c.r_max, c.s0);
    o.require(std::abs(g.required_gain - c.required) <= 1e-12, "required gain");
    o.require(std::abs(g.eta - c.eta) <= 1e-12, "eta");
    o.require(g.satisfied == c.satisfied, "satisfied flag");
    o.require(c.satisfied ? std::abs(g.settling_bound - c.settling) <= 1e-12 : std::isinf(g.settling_bound),
              "settling bound");
  }
  o.detail << "4 rational cases checked ";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"eigenvalue reproduction", eigenvalues},
      {"open-loop growth rate", open_loop_rate},
      {"analytic single-mode oracle", analytic_modes},
      {"elliptic oracle equivalence", elliptic_oracle},
      {"closed-loop stabilization", closed_loop_decay},
      {"reaching-law envelope", reaching_envelope},
      {"psi-scaling invariance", psi_scaling},
      {"regularization consistency", regularization},
      {"certificate formulas", certificate_formulas},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
