#include <doctest.h>

#include <cmath>
#include <random>

#include "pesmc/core.hpp"
#include "test_support.hpp"

using namespace pesmc;
using pesmc::testing::kPi;

TEST_CASE("build_grid lays out a uniform mesh with trapezoid weights") {
  auto g = build_grid(10);
  CHECK(g->h() == doctest::Approx(0.1));
  CHECK(g->x(3) == doctest::Approx(0.3));
  CHECK(g->weights()[0] == doctest::Approx(0.05));
  CHECK(g->weights()[5] == doctest::Approx(0.1));
  CHECK(g->x(0) == 0.0);
  CHECK(g->x(10) == 1.0);

  auto g8 = build_grid(8);
  CHECK(g8->size() == 9);
  double sum = 0.0;
  for (double w : g8->weights()) sum += w;
  CHECK(std::abs(sum - 1.0) <= 1e-12);

  for (int n : {8, 9, 17, 200, 1023}) {
    auto grid = build_grid(n);
    double total = 0.0;
    for (double w : grid->weights()) total += w;
    CHECK(std::abs(total - 1.0) <= 1e-12);
    for (std::size_t i = 1; i < grid->size(); ++i) CHECK(grid->x(i) > grid->x(i - 1));
  }
}

TEST_CASE("build_grid rejects fewer than eight intervals") {
  try {
    build_grid(4);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidResolution);
  }
}

TEST_CASE("PhysicalParams validation") {
  PhysicalParams p;
  CHECK_NOTHROW(p.validate());
  p.gamma = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);
  p.gamma = 1.0;
  p.alpha = std::nan("");
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("Field rejects a value count that does not match the grid") {
  CHECK_THROWS_AS(Field(build_grid(10), std::vector<double>(5, 0.0)), Error);
}

TEST_CASE("integrate") {
  auto g10 = build_grid(10);
  CHECK(integrate(Field::constant(g10, 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(integrate(Field::sample(g10, [](double x) { return x; })) == doctest::Approx(0.5).epsilon(1e-14));
  auto g200 = build_grid(200);
  const double s = integrate(Field::sample(g200, [](double x) { return std::sin(kPi * x); }));
  CHECK(std::abs(s - 2.0 / kPi) <= 1e-4);
}

TEST_CASE("integrate is exact on affine fields") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  std::uniform_int_distribution<int> res(8, 500);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = coef(rng), b = coef(rng);
    auto g = build_grid(res(rng));
    const double got = integrate(Field::sample(g, [&](double x) { return a + b * x; }));
    CHECK(std::abs(got - (a + 0.5 * b)) <= 1e-12);
  }
}

TEST_CASE("quadrature error shrinks at second order") {
  auto err = [](int n) {
    auto g = build_grid(n);
    return std::abs(integrate(Field::sample(g, [](double x) { return std::sin(kPi * x); })) - 2.0 / kPi);
  };
  for (int n : {16, 32, 64, 128, 256}) {
    const double ratio = err(n) / err(2 * n);
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
  }
}

TEST_CASE("l2_norm") {
  auto g = build_grid(50);
  CHECK(l2_norm(Field::constant(g, 0.0)) == 0.0);
  CHECK(l2_norm(Field::constant(g, 2.0)) == doctest::Approx(2.0).epsilon(1e-14));
  auto g200 = build_grid(200);
  CHECK(std::abs(l2_norm(Field::sample(g200, [](double x) { return std::sin(kPi * x); })) -
                 1.0 / std::sqrt(2.0)) <= 1e-4);
}

TEST_CASE("h1_norm") {
  auto g = build_grid(64);
  CHECK(h1_norm(Field::constant(g, 0.0)) == 0.0);
  CHECK(h1_norm(Field::constant(g, -3.5)) == doctest::Approx(3.5).epsilon(1e-14));
  auto g200 = build_grid(200);
  // |sin(pi x)|_{H1}^2 = 1/2 + pi^2/2
  const double expected = std::sqrt(0.5 + kPi * kPi / 2.0);
  CHECK(std::abs(h1_norm(Field::sample(g200, [](double x) { return std::sin(kPi * x); })) - expected) <= 1e-2);
}

TEST_CASE("derivative uses second-order stencils up to the boundary") {
  auto err = [](int n) {
    auto g = build_grid(n);
    Field d = derivative(Field::sample(g, [](double x) { return std::exp(x) * std::sin(2.0 * x); }));
    double worst = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double x = g->x(i);
      worst = std::max(worst, std::abs(d[i] - std::exp(x) * (std::sin(2 * x) + 2 * std::cos(2 * x))));
    }
    return worst;
  };
  const double ratio = err(100) / err(200);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
  // Quadratics are differentiated exactly, endpoints included.
  auto g = build_grid(12);
  Field d = derivative(Field::sample(g, [](double x) { return 3 * x * x - x + 2; }));
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == doctest::Approx(6 * g->x(i) - 1).epsilon(1e-11));
}

TEST_CASE("weighted_inner") {
  auto g = build_grid(200);
  CHECK(weighted_inner(Field::constant(g, 1.0), Field::constant(g, 1.0)) == doctest::Approx(1.0));
  const double s = weighted_inner(Field::sample(g, [](double x) { return std::sin(kPi * x); }),
                                  Field::constant(g, 1.0));
  CHECK(std::abs(s - 2.0 / kPi) <= 1e-4);
  try {
    weighted_inner(Field::constant(build_grid(10), 1.0), Field::constant(build_grid(20), 1.0));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IncompatibleGrids);
  }
}

TEST_CASE("norm homogeneity and Cauchy-Schwarz on random fields") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> scalar(-10.0, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = build_grid(8 + trial);
    const Field f = pesmc::testing::random_field(g, rng);
    const Field h = pesmc::testing::random_field(g, rng, 3.0);
    const double c = scalar(rng);
    CHECK(std::abs(l2_norm(c * f) - std::abs(c) * l2_norm(f)) <= 1e-12 * std::abs(c) * l2_norm(f));
    CHECK(std::abs(weighted_inner(f, h)) <= l2_norm(f) * l2_norm(h) + 1e-12);
  }
}
