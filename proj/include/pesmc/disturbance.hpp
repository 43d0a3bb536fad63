#pragma once

// Bounded matched disturbances d(t) entering u_x(1, t) alongside the control.

#include <cstdint>

namespace pesmc {

struct DisturbanceModel {
  enum class Kind { Zero, Constant, Sinusoid, BoundedNoise };

  Kind kind = Kind::Zero;
  double level = 0.0;              // Constant
  double amplitude = 0.0;          // Sinusoid, BoundedNoise
  double angular_frequency = 0.0;  // Sinusoid
  double phase = 0.0;              // Sinusoid
  std::uint64_t seed = 0;          // BoundedNoise
  double hold_interval = 0.01;     // BoundedNoise

  static DisturbanceModel zero() { return {}; }
  static DisturbanceModel constant(double level);
  static DisturbanceModel sinusoid(double amplitude, double angular_frequency, double phase = 0.0);
  /// Piecewise constant over hold_interval, uniform on [-amplitude, amplitude].
  static DisturbanceModel bounded_noise(double amplitude, std::uint64_t seed, double hold_interval);

  /// Certified sup |d(t)|.
  double bound() const;

  void validate() const;
};

/// Throws Domain for t < 0. Pure: the noise value of each hold interval is
/// derived from (seed, interval index) alone.
double evaluate(const DisturbanceModel& model, double t);

}  // namespace pesmc
