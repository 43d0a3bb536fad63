#include "pesmc/kernels.hpp"

#include <cstddef>

namespace pesmc::kernels {
namespace {

double weighted_dot_scalar(std::span<const double> w, std::span<const double> f,
                           std::span<const double> g) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * f[i] * g[i];
  return acc;
}

void stencil3_scalar(std::span<const double> x, double lo, double mid, double hi,
                     std::span<double> y) {
  if (x.size() < 3) return;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    y[i] = lo * x[i - 1] + mid * x[i] + hi * x[i + 1];
  }
}

void axpy_scalar(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", &weighted_dot_scalar, &stencil3_scalar, &axpy_scalar};
  return table;
}

}  // namespace pesmc::kernels
