#include "pesmc/core.hpp"

#include <algorithm>
#include <cmath>

#include "pesmc/kernels.hpp"

namespace pesmc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidResolution: return "invalid-resolution";
    case ErrorKind::IncompatibleGrids: return "incompatible-grids";
    case ErrorKind::InvalidCoefficient: return "invalid-coefficient";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::Unfittable: return "unfittable";
    case ErrorKind::InsufficientTrace: return "insufficient-trace";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

void PhysicalParams::validate() const {
  for (double c : {gamma, rho, alpha, beta}) {
    if (!std::isfinite(c)) throw Error(ErrorKind::InvalidCoefficient, "non-finite PDE coefficient");
  }
  if (gamma <= 0.0) {
    throw Error(ErrorKind::InvalidCoefficient, "gamma must be positive");
  }
}

Grid::Grid(int intervals) : n_(intervals) {
  if (intervals < kMinIntervals) {
    throw Error(ErrorKind::InvalidResolution,
                "grid needs at least " + std::to_string(kMinIntervals) + " intervals, got " +
                    std::to_string(intervals));
  }
  h_ = 1.0 / n_;
  nodes_.resize(static_cast<std::size_t>(n_) + 1);
  weights_.assign(nodes_.size(), h_);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    nodes_[i] = static_cast<double>(i) / n_;
  }
  weights_.front() = 0.5 * h_;
  weights_.back() = 0.5 * h_;
}

GridPtr build_grid(int intervals) { return std::make_shared<const Grid>(intervals); }

Field::Field(GridPtr grid) : grid_(std::move(grid)), values_(grid_->size(), 0.0) {}

Field::Field(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size()) {
    throw Error(ErrorKind::InvalidArgument,
                "field has " + std::to_string(values_.size()) + " values for " +
                    std::to_string(grid_->size()) + " nodes");
  }
}

Field Field::sample(GridPtr grid, const std::function<double(double)>& f) {
  Field out(grid);
  for (std::size_t i = 0; i < out.size(); ++i) out.values_[i] = f(grid->x(i));
  return out;
}

Field Field::constant(GridPtr grid, double c) {
  Field out(std::move(grid));
  std::fill(out.values_.begin(), out.values_.end(), c);
  return out;
}

bool Field::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double Field::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Field& Field::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(*this, other);
  kernels::active().axpy(1.0, other.values(), values_);
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(*this, other);
  kernels::active().axpy(-1.0, other.values(), values_);
  return *this;
}

Field operator*(double c, Field f) { return f *= c; }
Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) {
    throw Error(ErrorKind::IncompatibleGrids,
                "fields live on grids with " + std::to_string(a.grid().intervals()) + " and " +
                    std::to_string(b.grid().intervals()) + " intervals");
  }
}

namespace {
const std::vector<double>& ones_like(const Grid& grid) {
  // Cached per thread so integrate() can reuse the three-way dot kernel.
  thread_local std::vector<double> ones;
  if (ones.size() != grid.size()) ones.assign(grid.size(), 1.0);
  return ones;
}
}  // namespace

double integrate(const Field& f) {
  return kernels::active().weighted_dot(f.grid().weights(), f.values(), ones_like(f.grid()));
}

double weighted_inner(const Field& f, const Field& g) {
  require_same_grid(f, g);
  return kernels::active().weighted_dot(f.grid().weights(), f.values(), g.values());
}

double l2_norm(const Field& f) {
  return std::sqrt(kernels::active().weighted_dot(f.grid().weights(), f.values(), f.values()));
}

Field derivative(const Field& f) {
  const Grid& g = f.grid();
  const double inv2h = 0.5 / g.h();
  Field df(f.grid_ptr());
  const auto u = f.values();
  auto out = df.values();
  kernels::active().stencil3(u, -inv2h, 0.0, inv2h, out);
  const std::size_t n = u.size() - 1;
  out[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) * inv2h;
  out[n] = (3.0 * u[n] - 4.0 * u[n - 1] + u[n - 2]) * inv2h;
  return df;
}

double h1_norm(const Field& f) {
  const double l2 = l2_norm(f);
  const double dl2 = l2_norm(derivative(f));
  return std::sqrt(l2 * l2 + dl2 * dl2);
}

}  // namespace pesmc
