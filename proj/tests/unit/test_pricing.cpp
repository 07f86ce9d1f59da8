#include <doctest.h>

#include <cmath>
#include <random>

#include "microgrid/errors.hpp"
#include "microgrid/pricing.hpp"

using namespace microgrid;

namespace {
PricingParams reference_params(SigmoidKind kind = SigmoidKind::zero_centered, double tau = 10.0) {
  PricingParams p;
  p.a = 1.0;
  p.k = 4.0;
  p.capacity = 700.0;
  p.sigmoid_kind = kind;
  p.tau = tau;
  return p;
}
}  // namespace

TEST_CASE("base price at, below and above capacity") {
  const PricingParams p = reference_params();
  CHECK(base_price(p, 700.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(base_price(p, 0.0) == 0.0);
  CHECK(base_price(p, 765.9) == doctest::Approx(1.4331647509366765).epsilon(1e-12));
  CHECK_THROWS_AS(base_price(p, -1.0), ArgumentError);
}

TEST_CASE("overload penalty is strictly gated") {
  for (SigmoidKind kind : {SigmoidKind::standard, SigmoidKind::zero_centered}) {
    const PricingParams p = reference_params(kind);
    CHECK(overload_penalty(p, -10.0) == 0.0);
    CHECK(overload_penalty(p, 0.0) == 0.0);
  }
  const PricingParams zc = reference_params(SigmoidKind::zero_centered);
  CHECK(overload_penalty(zc, 65.9) == doctest::Approx(0.9972556908631841).epsilon(1e-12));
  const PricingParams std_kind = reference_params(SigmoidKind::standard);
  CHECK(overload_penalty(std_kind, 10.0) ==
        doctest::Approx(0.7310585786300049).epsilon(1e-12));
}

TEST_CASE("price composes base and penalty") {
  const PricingParams p = reference_params();
  CHECK(price(p, 696.0809) == doctest::Approx(0.9777925154693371).epsilon(1e-12));
  CHECK(price(p, 700.0) == 1.0);
  CHECK(price(p, 765.9) == doctest::Approx(2.4304204417998605).epsilon(1e-12));
  CHECK(price(p, 765.9) > base_price(p, 765.9));
  CHECK(price(p, 699.9) == base_price(p, 699.9));
}

TEST_CASE("price is monotone in total demand") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> udist(0.0, 1.0);
  for (int draw = 0; draw < 3; ++draw) {
    PricingParams p;
    p.a = 0.5 + 2.0 * udist(rng);
    p.k = 1.0 + 5.0 * udist(rng);
    p.capacity = 100.0 + 900.0 * udist(rng);
    p.sigmoid_kind = draw % 2 ? SigmoidKind::standard : SigmoidKind::zero_centered;
    p.tau = 1.0 + 30.0 * udist(rng);
    for (int pair = 0; pair < 1000; ++pair) {
      double t1 = 2.0 * p.capacity * udist(rng);
      double t2 = 2.0 * p.capacity * udist(rng);
      if (t1 > t2) std::swap(t1, t2);
      CHECK(price(p, t1) <= price(p, t2) + 1e-15);
    }
  }
}

TEST_CASE("zero-centered price is continuous at capacity") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> udist(0.0, 1.0);
  for (int draw = 0; draw < 5; ++draw) {
    PricingParams p;
    p.a = 0.5 + 2.0 * udist(rng);
    p.k = 1.0 + 5.0 * udist(rng);
    p.capacity = 100.0 + 900.0 * udist(rng);
    p.sigmoid_kind = SigmoidKind::zero_centered;
    p.tau = 1.0 + 30.0 * udist(rng);
    const double slope_bound = 4.0 * p.k * p.a / p.capacity + 1.0 / (2.0 * p.tau);
    for (double eps : {1e-3, 1e-6}) {
      CHECK(std::abs(price(p, p.capacity + eps) - price(p, p.capacity)) <=
            slope_bound * eps + 1e-9);
    }
  }
}

TEST_CASE("standard sigmoid jumps by one half at capacity") {
  const PricingParams p = reference_params(SigmoidKind::standard);
  const double jump = price(p, p.capacity + 1e-9) - price(p, p.capacity);
  CHECK(jump >= 0.5 - 1e-3);
  CHECK(jump <= 0.5 + 1e-3);
}

TEST_CASE("penalty stays inside [0, 1)") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> excess(-500.0, 5000.0);
  for (SigmoidKind kind : {SigmoidKind::standard, SigmoidKind::zero_centered}) {
    const PricingParams p = reference_params(kind);
    for (int i = 0; i < 500; ++i) {
      const double v = overload_penalty(p, excess(rng));
      CHECK(v >= 0.0);
      CHECK(v < 1.0);
    }
  }
}

TEST_CASE("parameter validation") {
  PricingParams p = reference_params();
  p.a = 0.0;
  CHECK_THROWS_AS(p.validate(), ArgumentError);
  p = reference_params();
  p.k = 0.5;
  CHECK_THROWS_AS(p.validate(), ArgumentError);
  p = reference_params();
  p.capacity = -700.0;
  CHECK_THROWS_AS(p.validate(), ArgumentError);
  p = reference_params();
  p.tau = 0.0;
  CHECK_THROWS_AS(p.validate(), ArgumentError);
  CHECK_NOTHROW(reference_params().validate());
}
