#pragma once

// Sliding-mode boundary control at x = 1.
//
// The sliding variable is s = <psi, u>. Its derivative along solutions is
//   s' = psi(1) (omega + d) - rho s + R,
//   R  = -<psi_x, u_x> + alpha <psi, v>,
// so the basic law omega = -K sign(s) + (rho / psi(1)) s leaves
//   s' = -K psi(1) sign(s) + psi(1) d + R,
// and the compensated law additionally cancels R.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pesmc/core.hpp"

namespace pesmc {

/// Description of psi independent of any grid.
struct PsiSpec {
  enum class Kind { ConstantOne, Polynomial, Tabulated };
  Kind kind = Kind::ConstantOne;
  /// Polynomial: c0 + c1 x + c2 x^2 + ...; Tabulated: one value per node.
  std::vector<double> values;
};

class TestFunction {
 public:
  static TestFunction constant_one(GridPtr grid);
  static TestFunction polynomial(GridPtr grid, std::vector<double> coefficients);
  /// Derivative by finite differences, boundary value from the last sample.
  static TestFunction tabulated(Field samples);
  static TestFunction from_spec(const PsiSpec& spec, GridPtr grid);

  PsiSpec::Kind kind() const noexcept { return kind_; }
  const Field& samples() const noexcept { return samples_; }
  const Field& derivative_samples() const noexcept { return derivative_; }
  double boundary_value() const noexcept { return boundary_value_; }
  /// psi / psi(1) and its derivative. The control law only depends on psi
  /// through this shape.
  const Field& unit_samples() const noexcept { return unit_samples_; }
  const Field& unit_derivative_samples() const noexcept { return unit_derivative_; }

  /// c * psi; c must be nonzero.
  TestFunction scaled(double c) const;

 private:
  TestFunction(PsiSpec::Kind kind, Field samples, Field derivative, double boundary_value);

  PsiSpec::Kind kind_;
  Field samples_;
  Field derivative_;
  double boundary_value_;
  Field unit_samples_;
  Field unit_derivative_;
};

struct SignMode {
  enum class Kind { Ideal, Saturation, SmoothTanh };
  Kind kind = Kind::Saturation;
  double eps = 1e-3;

  static SignMode ideal() { return {Kind::Ideal, 0.0}; }
  static SignMode saturation(double eps) { return {Kind::Saturation, eps}; }
  static SignMode smooth_tanh(double eps) { return {Kind::SmoothTanh, eps}; }

  /// Throws InvalidArgument when a regularized mode has eps <= 0.
  void validate() const;
};

enum class ControlLaw { Basic, Compensated };

/// ideal: sign with sign(0) = 0; saturation: clamp(s/eps, -1, 1); smooth-tanh: tanh(s/eps).
double regularized_sign(const SignMode& mode, double s);

struct ControllerConfig {
  double gain = 2.0;
  ControlLaw law = ControlLaw::Basic;
  SignMode sign_mode = SignMode::saturation(1e-3);
  TestFunction psi;

  void validate() const;
};

double sliding_value(const TestFunction& psi, const Field& u);

/// R = -<psi_x, Du> + alpha <psi, v>, with v the elliptic solve for u.
double remainder(const TestFunction& psi, const Field& u, const Field& v, double alpha);

struct ControlSample {
  double s = 0.0;
  double remainder = 0.0;
  double omega = 0.0;
};

/// Evaluates the boundary law on psi / psi(1). The regularized sign acts on
/// s / psi(1), so the boundary layer in s has width eps |psi(1)| and the output
/// does not depend on the scale of psi. s and R are reported for psi itself.
ControlSample control_output(const ControllerConfig& cfg, const PhysicalParams& params,
                             const Field& u, const Field& v);

/// Same law from precomputed s and R.
double control_law(const ControllerConfig& cfg, const PhysicalParams& params, double s, double r);

struct GainCertificate {
  double d_max = 0.0;
  double r_max = 0.0;
  double required_gain = 0.0;
  double eta = 0.0;
  bool satisfied = false;
  double settling_bound = std::numeric_limits<double>::infinity();
};

/// Reaching condition K > (|psi(1)| d_max + R_max) / |psi(1)|, margin
/// eta = K |psi(1)| - (|psi(1)| d_max + R_max) and settling bound |s0| / eta.
GainCertificate gain_certificate(double gain, double psi_at_one, double d_max, double r_max,
                                 double s0);
GainCertificate gain_certificate(const ControllerConfig& cfg, double d_max, double r_max,
                                 double s0);

}  // namespace pesmc
