#pragma once

// Post-processing of simulation traces.

#include <optional>
#include <string>
#include <utility>

#include "pesmc/control.hpp"
#include "pesmc/trace.hpp"

namespace pesmc {

struct RateFit {
  double rate = 0.0;
  std::pair<double, double> window;
  double residual = 0.0;  // RMS of the log-linear fit
  std::string series_name;
};

/// Least-squares slope of log(series) against t over samples with t in
/// [window.first, window.second]. Throws Unfittable on non-positive values or
/// fewer than two samples.
RateFit fit_rate(const SimTrace& trace, const std::string& series,
                 std::pair<double, double> window);

struct CertificateInputs {
  double gain = 0.0;
  double psi_at_one = 1.0;
  double d_max = 0.0;
};

struct AuditReport {
  double r_max = 0.0;
  GainCertificate certificate;
  double band = 0.0;
  std::optional<double> reaching_time;
  /// reaching_time <= 1.05 * settling bound; unset when the certificate fails
  /// or s never settles in the band.
  std::optional<bool> reaching_within_bound;
};

/// Boundary-layer band for reaching detection:
/// eps |psi(1)| + 5 dt (K + d_max), with eps = 0 for the ideal sign.
double reaching_band(const SignMode& mode, double psi_at_one, double dt, double gain, double d_max);

/// Measures sup |R| along the trace and checks the reaching condition against
/// it. Throws InsufficientTrace when the trace carries no remainder series.
AuditReport audit_certificate(const SimTrace& trace, const CertificateInputs& inputs, double band);

/// Same, with inputs and band taken from the trace's own config.
AuditReport audit_certificate(const SimTrace& trace);

}  // namespace pesmc
