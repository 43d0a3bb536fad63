#pragma once

// Spatial discretization shared by every other module: the uniform grid on
// [0,1], grid-sampled fields, trapezoid quadrature and the discrete norms.

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pesmc {

enum class ErrorKind {
  InvalidResolution,
  IncompatibleGrids,
  InvalidCoefficient,
  InvalidArgument,
  Domain,
  Divergence,
  Unfittable,
  InsufficientTrace,
  Parse,
  Validation,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Coefficients of u_t = u_xx - rho u + alpha v, 0 = v_xx - gamma v + beta u.
struct PhysicalParams {
  double gamma = 0.25;
  double rho = 1.0 / 3.0;
  double alpha = 0.25;
  double beta = 0.5;

  /// Throws InvalidCoefficient unless gamma > 0 and every field is finite.
  void validate() const;
};

/// Uniform mesh x_i = i/n, i = 0..n, with trapezoid weights.
class Grid {
 public:
  static constexpr int kMinIntervals = 8;

  explicit Grid(int intervals);

  int intervals() const noexcept { return n_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double h() const noexcept { return h_; }
  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double x(std::size_t i) const { return nodes_[i]; }

  bool operator==(const Grid& other) const noexcept { return n_ == other.n_; }

 private:
  int n_;
  double h_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_grid(int intervals);

/// A scalar function sampled at the grid nodes.
class Field {
 public:
  explicit Field(GridPtr grid);
  Field(GridPtr grid, std::vector<double> values);

  static Field sample(GridPtr grid, const std::function<double(double)>& f);
  static Field constant(GridPtr grid, double c);

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  bool all_finite() const noexcept;
  double max_abs() const noexcept;

  Field& operator*=(double c);
  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

Field operator*(double c, Field f);
Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);

/// Throws IncompatibleGrids when the two fields live on different meshes.
void require_same_grid(const Field& a, const Field& b);

double integrate(const Field& f);
double weighted_inner(const Field& f, const Field& g);
double l2_norm(const Field& f);

/// Central differences inside, one-sided three-point stencils at x = 0 and x = 1.
Field derivative(const Field& f);

double h1_norm(const Field& f);

}  // namespace pesmc
