#include "pesmc/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pesmc/kernels.hpp"

namespace pesmc {

std::vector<double> thomas_solve(std::span<const double> lower, std::span<const double> diag,
                                 std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n, 0.0);
  std::vector<double> x(rhs.begin(), rhs.end());
  double pivot = diag[0];
  if (pivot == 0.0) throw Error(ErrorKind::InvalidArgument, "zero pivot in tridiagonal solve");
  c[0] = n > 1 ? upper[0] / pivot : 0.0;
  x[0] /= pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - lower[i] * c[i - 1];
    if (pivot == 0.0) throw Error(ErrorKind::InvalidArgument, "zero pivot in tridiagonal solve");
    c[i] = i + 1 < n ? upper[i] / pivot : 0.0;
    x[i] = (x[i] - lower[i] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

EllipticSystem::EllipticSystem(GridPtr grid, double gamma) : grid_(std::move(grid)), gamma_(gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorKind::InvalidCoefficient, "elliptic operator needs gamma > 0");
  }
  const std::size_t m = grid_->size();
  const double inv_h2 = 1.0 / (grid_->h() * grid_->h());
  lower_.assign(m, -inv_h2);
  upper_.assign(m, -inv_h2);
  diag_.assign(m, gamma + 2.0 * inv_h2);
  lower_[0] = 0.0;
  upper_[0] = -2.0 * inv_h2;
  lower_[m - 1] = -2.0 * inv_h2;
  upper_[m - 1] = 0.0;
}

void EllipticSystem::check_grid(const Field& f) const {
  if (!(f.grid() == *grid_)) {
    throw Error(ErrorKind::IncompatibleGrids, "field grid differs from the elliptic system grid");
  }
}

Field EllipticSystem::apply(const Field& v) const {
  check_grid(v);
  Field out(grid_);
  const auto x = v.values();
  auto y = out.values();
  const std::size_t last = x.size() - 1;
  kernels::active().stencil3(x, lower_[1], diag_[1], upper_[1], y);
  y[0] = diag_[0] * x[0] + upper_[0] * x[1];
  y[last] = lower_[last] * x[last - 1] + diag_[last] * x[last];
  return out;
}

Field EllipticSystem::solve(const Field& rhs) const {
  check_grid(rhs);
  return Field(grid_, thomas_solve(lower_, diag_, upper_, rhs.values()));
}

Field EllipticSystem::apply_K(const Field& u, double beta) const { return solve(beta * u); }

double EllipticSystem::residual(const Field& v, const Field& rhs) const {
  return (apply(v) - rhs).max_abs();
}

EllipticSystem assemble(GridPtr grid, double gamma) { return EllipticSystem(std::move(grid), gamma); }

Field spectral_oracle(const Field& u, const PhysicalParams& params, int modes) {
  if (modes < 1) throw Error(ErrorKind::InvalidArgument, "spectral oracle needs at least one mode");
  const GridPtr& grid = u.grid_ptr();
  const int kmax = std::min(modes, grid->intervals());
  Field out(grid);
  for (int k = 0; k <= kmax; ++k) {
    const double freq = k * std::numbers::pi;
    const Field basis = Field::sample(grid, [freq](double x) { return std::cos(freq * x); });
    // Discrete cosines up to the Nyquist index are orthogonal under the
    // trapezoid rule, so dividing by the discrete norm makes projection exact.
    const double coeff = weighted_inner(u, basis) / weighted_inner(basis, basis);
    const double gain = params.beta / (params.gamma + freq * freq);
    auto y = out.values();
    kernels::active().axpy(gain * coeff, basis.values(), y);
  }
  return out;
}

}  // namespace pesmc
