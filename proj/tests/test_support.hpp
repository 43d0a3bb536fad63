#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "pesmc/core.hpp"

namespace pesmc::testing {

inline constexpr double kPi = std::numbers::pi;

inline Field random_field(const GridPtr& grid, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Field f(grid);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = dist(rng);
  return f;
}

/// sum_{k<modes} c_k cos(k pi x) with random coefficients in [-1, 1].
inline std::vector<double> random_cosine_coefficients(std::mt19937_64& rng, int modes) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(modes));
  for (double& v : c) v = dist(rng);
  return c;
}

inline double cosine_sum(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * std::cos(static_cast<double>(k) * kPi * x);
  return acc;
}

}  // namespace pesmc::testing
