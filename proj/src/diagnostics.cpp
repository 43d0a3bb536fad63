#include "pesmc/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "pesmc/sim.hpp"

namespace pesmc {

RateFit fit_rate(const SimTrace& trace, const std::string& series,
                 std::pair<double, double> window) {
  const auto& values = trace.series(series);
  if (!(window.first < window.second)) {
    throw Error(ErrorKind::Unfittable, "fit window must have t_start < t_end");
  }
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double t = trace.times[i];
    if (t < window.first || t > window.second) continue;
    if (!(values[i] > 0.0)) {
      throw Error(ErrorKind::Unfittable,
                  series + " is not positive at t = " + std::to_string(t));
    }
    const double y = std::log(values[i]);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
    ++count;
  }
  if (count < 2) throw Error(ErrorKind::Unfittable, "fewer than two samples in fit window");
  const double n = static_cast<double>(count);
  const double denom = n * stt - st * st;
  RateFit fit;
  fit.series_name = series;
  fit.window = window;
  fit.rate = (n * sty - st * sy) / denom;
  const double intercept = (sy - fit.rate * st) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double t = trace.times[i];
    if (t < window.first || t > window.second) continue;
    const double r = std::log(values[i]) - (intercept + fit.rate * t);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

double reaching_band(const SignMode& mode, double psi_at_one, double dt, double gain,
                     double d_max) {
  const double layer = mode.kind == SignMode::Kind::Ideal ? 0.0 : mode.eps * std::abs(psi_at_one);
  return layer + 5.0 * dt * (gain + d_max);
}

AuditReport audit_certificate(const SimTrace& trace, const CertificateInputs& inputs,
                              double band) {
  if (trace.remainder.empty() || trace.remainder.size() != trace.size()) {
    throw Error(ErrorKind::InsufficientTrace, "trace carries no remainder series (open loop?)");
  }
  AuditReport report;
  report.band = band;
  for (double r : trace.remainder) report.r_max = std::max(report.r_max, std::abs(r));
  report.certificate =
      gain_certificate(inputs.gain, inputs.psi_at_one, inputs.d_max, report.r_max, trace.s.front());
  report.reaching_time = detect_reaching(trace, band);
  if (report.certificate.satisfied && report.reaching_time) {
    report.reaching_within_bound =
        *report.reaching_time <= report.certificate.settling_bound * 1.05;
  }
  return report;
}

AuditReport audit_certificate(const SimTrace& trace) {
  const auto& ctl = trace.config.controller;
  if (!ctl) throw Error(ErrorKind::InsufficientTrace, "trace was recorded without a controller");
  const double psi1 = TestFunction::from_spec(ctl->psi, build_grid(trace.config.grid_n)).boundary_value();
  const CertificateInputs inputs{ctl->gain, psi1, trace.config.disturbance.bound()};
  const double band =
      reaching_band(ctl->sign_mode, psi1, trace.config.dt, ctl->gain, inputs.d_max);
  return audit_certificate(trace, inputs, band);
}

}  // namespace pesmc
