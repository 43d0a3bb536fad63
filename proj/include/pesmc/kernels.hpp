#pragma once

// Data-parallel inner loops behind quadrature, norms and the stencil sweeps.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The variant is chosen once at startup from CPU features; setting
// PESMC_KERNELS=scalar in the environment forces the reference path.

#include <span>
#include <string_view>

namespace pesmc::kernels {

struct KernelTable {
  std::string_view name;

  /// sum_i w[i] * f[i] * g[i]
  double (*weighted_dot)(std::span<const double> w, std::span<const double> f,
                         std::span<const double> g);

  /// y[i] = lo * x[i-1] + mid * x[i] + hi * x[i+1] for 1 <= i <= size-2.
  /// y[0] and y[size-1] are left untouched.
  void (*stencil3)(std::span<const double> x, double lo, double mid, double hi,
                   std::span<double> y);

  /// y[i] += a * x[i]
  void (*axpy)(double a, std::span<const double> x, std::span<double> y);
};

const KernelTable& scalar_table();

/// nullptr when the build or the CPU lacks AVX2+FMA.
const KernelTable* avx2_table();

/// The table selected for this process.
const KernelTable& active();

}  // namespace pesmc::kernels
