// Built with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cstddef>

#include "pesmc/kernels.hpp"

namespace pesmc::kernels::avx2 {
namespace {

double weighted_dot(std::span<const double> w, std::span<const double> f,
                    std::span<const double> g) {
  const std::size_t n = w.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d p0 = _mm256_mul_pd(_mm256_loadu_pd(&w[i]), _mm256_loadu_pd(&f[i]));
    const __m256d p1 = _mm256_mul_pd(_mm256_loadu_pd(&w[i + 4]), _mm256_loadu_pd(&f[i + 4]));
    acc0 = _mm256_fmadd_pd(p0, _mm256_loadu_pd(&g[i]), acc0);
    acc1 = _mm256_fmadd_pd(p1, _mm256_loadu_pd(&g[i + 4]), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(&w[i]), _mm256_loadu_pd(&f[i]));
    acc0 = _mm256_fmadd_pd(p, _mm256_loadu_pd(&g[i]), acc0);
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  const __m128d lo = _mm256_castpd256_pd128(acc0);
  const __m128d hi = _mm256_extractf128_pd(acc0, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  double acc = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
  for (; i < n; ++i) acc += w[i] * f[i] * g[i];
  return acc;
}

void stencil3(std::span<const double> x, double lo, double mid, double hi, std::span<double> y) {
  const std::size_t n = x.size();
  if (n < 3) return;
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vmid = _mm256_set1_pd(mid);
  const __m256d vhi = _mm256_set1_pd(hi);
  std::size_t i = 1;
  for (; i + 4 < n; i += 4) {
    __m256d r = _mm256_mul_pd(vlo, _mm256_loadu_pd(&x[i - 1]));
    r = _mm256_fmadd_pd(vmid, _mm256_loadu_pd(&x[i]), r);
    r = _mm256_fmadd_pd(vhi, _mm256_loadu_pd(&x[i + 1]), r);
    _mm256_storeu_pd(&y[i], r);
  }
  for (; i + 1 < n; ++i) y[i] = lo * x[i - 1] + mid * x[i] + hi * x[i + 1];
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  const std::size_t n = x.size();
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(&y[i], _mm256_fmadd_pd(va, _mm256_loadu_pd(&x[i]), _mm256_loadu_pd(&y[i])));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const KernelTable& table() {
  static const KernelTable t{"avx2", &weighted_dot, &stencil3, &axpy};
  return t;
}

}  // namespace pesmc::kernels::avx2
