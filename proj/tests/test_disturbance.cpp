#include <doctest.h>

#include <cmath>

#include "pesmc/core.hpp"
#include "pesmc/disturbance.hpp"
#include "test_support.hpp"

using namespace pesmc;

TEST_CASE("evaluate examples") {
  CHECK(evaluate(DisturbanceModel::sinusoid(1.0, 20.0), pesmc::testing::kPi / 40.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(evaluate(DisturbanceModel::zero(), 12.3) == 0.0);
  CHECK(evaluate(DisturbanceModel::constant(-0.4), 3.0) == -0.4);
  const auto noise = DisturbanceModel::bounded_noise(0.5, 7, 0.01);
  for (double t : {0.0, 0.005, 0.013, 7.77}) CHECK(evaluate(noise, t) == evaluate(noise, t));
}

TEST_CASE("evaluate rejects negative times") {
  try {
    evaluate(DisturbanceModel::zero(), -1e-9);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
}

TEST_CASE("bounds") {
  CHECK(DisturbanceModel::zero().bound() == 0.0);
  CHECK(DisturbanceModel::constant(-2.5).bound() == 2.5);
  CHECK(DisturbanceModel::sinusoid(1.5, 3.0, 0.2).bound() == 1.5);
  CHECK(DisturbanceModel::bounded_noise(0.3, 1, 0.1).bound() == 0.3);
}

TEST_CASE("noise is piecewise constant over the hold interval") {
  const auto noise = DisturbanceModel::bounded_noise(1.0, 3, 0.25);
  CHECK(evaluate(noise, 0.0) == evaluate(noise, 0.24));
  CHECK(evaluate(noise, 0.25) == evaluate(noise, 0.49));
  CHECK(evaluate(noise, 0.0) != evaluate(noise, 0.25));
  // Distinct seeds give distinct signals.
  const auto other = DisturbanceModel::bounded_noise(1.0, 4, 0.25);
  int differing = 0;
  for (int k = 0; k < 20; ++k) differing += evaluate(noise, 0.25 * k) != evaluate(other, 0.25 * k);
  CHECK(differing == 20);
  CHECK_THROWS_AS(DisturbanceModel::bounded_noise(1.0, 3, 0.0).validate(), Error);
}

TEST_CASE("every model stays within its bound on 10^6 samples") {
  const DisturbanceModel models[] = {
      DisturbanceModel::zero(),
      DisturbanceModel::constant(0.8),
      DisturbanceModel::sinusoid(1.0, 20.0, 0.3),
      DisturbanceModel::bounded_noise(0.5, 7, 0.01),
  };
  for (const auto& m : models) {
    double worst = 0.0;
    constexpr int kSamples = 1'000'000;
    for (int i = 0; i < kSamples; ++i) worst = std::max(worst, std::abs(evaluate(m, 100.0 * i / (kSamples - 1))));
    CHECK(worst <= m.bound() + 1e-12);
  }
}

TEST_CASE("identical models give identical samples") {
  const auto a = DisturbanceModel::bounded_noise(0.5, 123456789012345ULL, 0.01);
  const auto b = DisturbanceModel::bounded_noise(0.5, 123456789012345ULL, 0.01);
  for (int i = 0; i < 5000; ++i) CHECK(evaluate(a, i * 0.0037) == evaluate(b, i * 0.0037));
}
