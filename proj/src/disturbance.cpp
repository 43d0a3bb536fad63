#include "pesmc/disturbance.hpp"

#include <cmath>
#include <random>

#include "pesmc/core.hpp"

namespace pesmc {

DisturbanceModel DisturbanceModel::constant(double level) {
  DisturbanceModel m;
  m.kind = Kind::Constant;
  m.level = level;
  return m;
}

DisturbanceModel DisturbanceModel::sinusoid(double amplitude, double angular_frequency,
                                            double phase) {
  DisturbanceModel m;
  m.kind = Kind::Sinusoid;
  m.amplitude = amplitude;
  m.angular_frequency = angular_frequency;
  m.phase = phase;
  return m;
}

DisturbanceModel DisturbanceModel::bounded_noise(double amplitude, std::uint64_t seed,
                                                 double hold_interval) {
  DisturbanceModel m;
  m.kind = Kind::BoundedNoise;
  m.amplitude = amplitude;
  m.seed = seed;
  m.hold_interval = hold_interval;
  return m;
}

double DisturbanceModel::bound() const {
  switch (kind) {
    case Kind::Zero: return 0.0;
    case Kind::Constant: return std::abs(level);
    case Kind::Sinusoid:
    case Kind::BoundedNoise: return std::abs(amplitude);
  }
  return 0.0;
}

void DisturbanceModel::validate() const {
  for (double p : {level, amplitude, angular_frequency, phase, hold_interval}) {
    if (!std::isfinite(p)) throw Error(ErrorKind::InvalidArgument, "non-finite disturbance parameter");
  }
  if (kind == Kind::BoundedNoise && !(hold_interval > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "noise hold interval must be positive");
  }
}

namespace {

double noise_value(const DisturbanceModel& m, double t) {
  const auto index = static_cast<std::uint64_t>(std::floor(t / m.hold_interval));
  std::seed_seq seq{static_cast<std::uint32_t>(m.seed), static_cast<std::uint32_t>(m.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 engine(seq);
  // Raw engine output is fully specified by the standard, unlike the
  // distribution classes, so the mapping to [-1, 1) is done by hand.
  const double unit = static_cast<double>(engine() >> 11) * 0x1.0p-53;
  return m.amplitude * (2.0 * unit - 1.0);
}

}  // namespace

double evaluate(const DisturbanceModel& model, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::Domain, "disturbance evaluated at negative time");
  switch (model.kind) {
    case DisturbanceModel::Kind::Zero: return 0.0;
    case DisturbanceModel::Kind::Constant: return model.level;
    case DisturbanceModel::Kind::Sinusoid:
      return model.amplitude * std::sin(model.angular_frequency * t + model.phase);
    case DisturbanceModel::Kind::BoundedNoise: return noise_value(model, t);
  }
  return 0.0;
}

}  // namespace pesmc
