// pesmc command-line front end: run, eigs, check-gain, audit.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include "pesmc/config.hpp"
#include "pesmc/diagnostics.hpp"
#include "pesmc/sim.hpp"
#include "pesmc/spectral.hpp"

namespace {

using pesmc::SimConfig;
using pesmc::SimTrace;
using json = nlohmann::json;

struct RunOptions {
  std::string scenario;
  std::string config;
  std::string out = "trace.csv";
  std::optional<double> t_final, dt, gain, eps;
  std::optional<int> grid_n, snapshot_stride;
  std::optional<std::string> sign_mode, law;
};

SimConfig resolve_run_config(const RunOptions& o) {
  json doc;
  if (!o.config.empty()) {
    doc = pesmc::to_json(pesmc::parse_config_file(o.config));
    if (!o.scenario.empty()) {
      throw pesmc::Error(pesmc::ErrorKind::Validation, "--scenario and --config are exclusive");
    }
  } else {
    doc = {{"scenario", o.scenario.empty() ? "fig1-closed-loop" : o.scenario}};
  }
  if (o.t_final) doc["t_final"] = *o.t_final;
  if (o.dt) doc["dt"] = *o.dt;
  if (o.grid_n) doc["grid_n"] = *o.grid_n;
  if (o.snapshot_stride) doc["snapshot_stride"] = *o.snapshot_stride;
  const bool touches_controller = o.gain || o.eps || o.sign_mode || o.law;
  if (touches_controller) {
    // Patch onto the resolved document so open-loop presets report a clear error.
    const SimConfig base = pesmc::resolve_config(doc);
    if (!base.controller) {
      throw pesmc::Error(pesmc::ErrorKind::Validation,
                         "controller: flags given for an open-loop configuration");
    }
    doc = pesmc::to_json(base);
    json& c = doc["controller"];
    if (o.gain) c["gain"] = *o.gain;
    if (o.law) c["law"] = *o.law;
    if (o.sign_mode || o.eps) {
      const json previous = c["sign_mode"];
      const std::string kind = o.sign_mode.value_or(previous.value("kind", "saturation"));
      json sign = {{"kind", kind}};
      if (kind != "ideal") {
        sign["eps"] = o.eps ? json(*o.eps) : previous.value("eps", json(1e-3));
      } else if (o.eps) {
        throw pesmc::Error(pesmc::ErrorKind::Validation, "controller.sign_mode: --eps has no effect with the ideal sign");
      }
      c["sign_mode"] = sign;
    }
  }
  return pesmc::resolve_config(doc);
}

void print_summary(const SimTrace& trace) {
  const SimConfig& cfg = trace.config;
  const std::size_t last = trace.size() - 1;
  std::printf("rows = %zu\n", trace.size());
  std::printf("t_final = %.12g\n", trace.times[last]);
  std::printf("norm_u_l2: initial = %.6e final = %.6e\n", trace.norm_u_l2.front(), trace.norm_u_l2[last]);
  std::printf("norm_v_l2: initial = %.6e final = %.6e\n", trace.norm_v_l2.front(), trace.norm_v_l2[last]);
  std::printf("norm_u_h1: final = %.6e\n", trace.norm_u_h1[last]);
  std::printf("growth = %s\n", trace.norm_u_l2[last] > trace.norm_u_l2.front() ? "yes" : "no");

  if (cfg.controller) {
    const double d_max = cfg.disturbance.bound();
    const double psi1 = cfg.controller->materialize(pesmc::build_grid(cfg.grid_n)).psi.boundary_value();
    const double band = pesmc::reaching_band(cfg.controller->sign_mode, psi1, cfg.dt, cfg.controller->gain, d_max);
    const auto reach = pesmc::detect_reaching(trace, band);
    if (reach) {
      std::printf("reaching_time = %.6g (band %.3g)\n", *reach, band);
    } else {
      std::printf("reaching_time = none (band %.3g)\n", band);
    }
  }

  const double start = cfg.t_final > 2.0 ? 1.0 : 0.5 * cfg.t_final;
  try {
    const auto fit = pesmc::fit_rate(trace, "norm_u_l2", {start, cfg.t_final});
    std::printf("fitted_rate = %.6g over [%g, %g] (residual %.3g)\n", fit.rate, fit.window.first,
                fit.window.second, fit.residual);
  } catch (const pesmc::Error& e) {
    std::printf("fitted_rate = n/a (%s)\n", e.what());
  }
}

int cmd_run(const RunOptions& o) {
  const SimConfig cfg = resolve_run_config(o);
  const std::filesystem::path out(o.out);
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  try {
    const SimTrace trace = pesmc::run(cfg);
    pesmc::write_trace(trace, out);
    std::printf("wrote %s\n", out.string().c_str());
    print_summary(trace);
  } catch (const pesmc::DivergenceError& e) {
    pesmc::write_trace(e.partial_trace(), out);
    throw;
  }
  return 0;
}

int cmd_eigs(const pesmc::PhysicalParams& p, int n_max) {
  p.validate();
  const pesmc::ModalReport r = pesmc::modal_report(p, n_max);
  for (const auto& [n, lambda] : r.eigenvalues) std::printf("lambda_%d = %.12g\n", n, lambda);
  std::printf("dominant = %.12g\n", r.dominant);
  std::printf("margin = %.12g\n", r.margin);
  if (r.outside_dominant_regime) std::printf("note: alpha beta < 0, stability taken from the largest listed eigenvalue\n");
  std::printf("stable = %s\n", r.stable ? "true" : "false");
  return 0;
}

void print_certificate(const pesmc::GainCertificate& c) {
  std::printf("d_max = %.12g\n", c.d_max);
  std::printf("r_max = %.12g\n", c.r_max);
  std::printf("required_gain = %.12g\n", c.required_gain);
  std::printf("eta = %.12g\n", c.eta);
  std::printf("satisfied = %s\n", c.satisfied ? "true" : "false");
  if (c.satisfied) {
    std::printf("settling_bound = %.12g\n", c.settling_bound);
  } else {
    std::printf("settling_bound = inf\n");
  }
}

int cmd_audit(const std::string& path, std::optional<double> band) {
  const SimTrace trace = pesmc::read_trace(path);
  pesmc::AuditReport rep;
  if (band) {
    const SimConfig& cfg = trace.config;
    if (!cfg.controller) throw pesmc::Error(pesmc::ErrorKind::InsufficientTrace, "trace has no controller data");
    const double psi1 = cfg.controller->materialize(pesmc::build_grid(cfg.grid_n)).psi.boundary_value();
    rep = pesmc::audit_certificate(trace, {cfg.controller->gain, psi1, cfg.disturbance.bound()}, *band);
  } else {
    rep = pesmc::audit_certificate(trace);
  }
  print_certificate(rep.certificate);
  std::printf("band = %.6g\n", rep.band);
  if (rep.reaching_time) {
    std::printf("reaching_time = %.6g\n", *rep.reaching_time);
  } else {
    std::printf("reaching_time = none\n");
  }
  if (rep.reaching_within_bound) {
    std::printf("within_bound = %s\n", *rep.reaching_within_bound ? "true" : "false");
  } else {
    std::printf("within_bound = n/a\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliding-mode boundary control of a parabolic-elliptic system"};
  app.set_version_flag("--version", PESMC_VERSION);
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Simulate a scenario or config file and write a trace");
  run_cmd->add_option("--scenario", run.scenario, "Named preset")
      ->check(CLI::IsMember(pesmc::scenario_names()));
  run_cmd->add_option("--config", run.config, "JSON config file")->check(CLI::ExistingFile);
  run_cmd->add_option("--out", run.out, "Trace CSV path")->capture_default_str();
  run_cmd->add_option("--t-final", run.t_final);
  run_cmd->add_option("--dt", run.dt);
  run_cmd->add_option("--grid-n", run.grid_n);
  run_cmd->add_option("--gain", run.gain);
  run_cmd->add_option("--eps", run.eps);
  run_cmd->add_option("--sign-mode", run.sign_mode)
      ->check(CLI::IsMember({"ideal", "saturation", "smooth-tanh"}));
  run_cmd->add_option("--law", run.law)->check(CLI::IsMember({"basic", "compensated"}));
  run_cmd->add_option("--snapshot-stride", run.snapshot_stride);

  pesmc::PhysicalParams params;
  int n_max = pesmc::kDefaultModeCount;
  auto* eigs_cmd = app.add_subcommand("eigs", "Print the open-loop spectrum and stability verdict");
  eigs_cmd->add_option("--gamma", params.gamma)->capture_default_str();
  eigs_cmd->add_option("--rho", params.rho)->capture_default_str();
  eigs_cmd->add_option("--alpha", params.alpha)->capture_default_str();
  eigs_cmd->add_option("--beta", params.beta)->capture_default_str();
  eigs_cmd->add_option("--n-max", n_max)->capture_default_str()->check(CLI::NonNegativeNumber);

  double gain = 0, psi1 = 1, d_max = 0, r_max = 0, s0 = 0;
  auto* gain_cmd = app.add_subcommand("check-gain", "Evaluate the reaching condition and settling bound");
  gain_cmd->add_option("--gain", gain)->required();
  gain_cmd->add_option("--psi1", psi1)->capture_default_str();
  gain_cmd->add_option("--d-max", d_max)->required();
  gain_cmd->add_option("--r-max", r_max)->required();
  gain_cmd->add_option("--s0", s0)->required();

  std::string trace_path;
  std::optional<double> band;
  auto* audit_cmd = app.add_subcommand("audit", "Check a closed-loop trace against its gain certificate");
  audit_cmd->add_option("--trace", trace_path)->required();
  audit_cmd->add_option("--band", band, "Override the reaching band");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*eigs_cmd) return cmd_eigs(params, n_max);
    if (*gain_cmd) {
      print_certificate(pesmc::gain_certificate(gain, psi1, d_max, r_max, s0));
      return 0;
    }
    if (*audit_cmd) return cmd_audit(trace_path, band);
  } catch (const pesmc::Error& e) {
    std::fprintf(stderr, "pesmc: %s error: %s\n", pesmc::to_string(e.kind()), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "pesmc: %s\n", e.what());
    return 1;
  }
  return 2;
}
