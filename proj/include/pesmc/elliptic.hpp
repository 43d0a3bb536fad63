#pragma once

// Quasi-steady elliptic constraint: (gamma I - d2/dx2) v = beta u with
// v_x(0) = v_x(1) = 0, discretized by second differences and ghost nodes.

#include <vector>

#include "pesmc/core.hpp"

namespace pesmc {

/// Solves a tridiagonal system with the Thomas algorithm. lower[0] and
/// upper[n-1] are ignored. Throws InvalidArgument on a zero pivot.
std::vector<double> thomas_solve(std::span<const double> lower, std::span<const double> diag,
                                 std::span<const double> upper, std::span<const double> rhs);

/// Bands of (gamma I - D2) on a grid. Interior rows carry (gamma + 2/h^2) on
/// the diagonal and -1/h^2 off it; the two boundary rows fold the mirrored
/// ghost value into a single -2/h^2 off-diagonal entry.
class EllipticSystem {
 public:
  EllipticSystem(GridPtr grid, double gamma);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  double gamma() const noexcept { return gamma_; }

  std::span<const double> lower() const noexcept { return lower_; }
  std::span<const double> diag() const noexcept { return diag_; }
  std::span<const double> upper() const noexcept { return upper_; }

  /// Returns (gamma I - D2) v.
  Field apply(const Field& v) const;

  /// Returns v with (gamma I - D2) v = rhs.
  Field solve(const Field& rhs) const;

  /// v = (gamma I - d2/dx2)^{-1} (beta u), the nonlocal coupling operator.
  Field apply_K(const Field& u, double beta) const;

  /// max_i |((gamma I - D2) v - rhs)_i|
  double residual(const Field& v, const Field& rhs) const;

 private:
  void check_grid(const Field& f) const;

  GridPtr grid_;
  double gamma_;
  std::vector<double> lower_, diag_, upper_;
};

/// Throws InvalidCoefficient when gamma <= 0.
EllipticSystem assemble(GridPtr grid, double gamma);

/// Independent reference for apply_K: projects u on cos(k pi x), k = 0..modes,
/// by quadrature, scales mode k by beta / (gamma + (k pi)^2), and resynthesizes.
/// Modes beyond the grid's Nyquist index (k > n) are dropped since they alias.
Field spectral_oracle(const Field& u, const PhysicalParams& params, int modes);

}  // namespace pesmc
