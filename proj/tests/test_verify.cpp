#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tmspline/verify.hpp"

using namespace tmspline;

TEST_CASE("modulus of a cubic vanishes") {
  const RealFunction c = [](double x) { return x * x * x - x; };
  CHECK(modulus(c, 4, 0.5, -1, 1).value < 1e-13);
  CHECK(modulus([](double x) { return std::exp(x); }, 4, 0.0, -1, 1).value == 0.0);
}

TEST_CASE("fourth modulus of x^4 is 24 t^4") {
  const RealFunction q = [](double x) { return x * x * x * x; };
  for (double t : {0.05, 0.1, 0.2}) {
    const double w = modulus(q, 4, t, -1, 1).value;
    const double ref = static_cast<double>(oracle::fourth_difference(q, -1, t));
    CHECK(ref == doctest::Approx(24 * t * t * t * t).epsilon(1e-9));
    CHECK(w == doctest::Approx(24 * t * t * t * t).epsilon(0.01));
  }
}

TEST_CASE("step bound is clamped so a window fits") {
  const RealFunction q = [](double x) { return x * x * x * x; };
  const auto big = modulus(q, 4, 10.0, 0, 1);
  CHECK(big.value == doctest::Approx(24.0 / 256).epsilon(1e-12));
  CHECK(big.steps == kDefaultModulusSteps);
  CHECK_THROWS(modulus(q, 0, 0.1, 0, 1));
  CHECK_THROWS(modulus(q, 4, -0.1, 0, 1));
  CHECK_THROWS(modulus(q, 4, 0.1, 1, 1));
}

TEST_CASE("modulus properties on the corpus") {
  const std::vector<RealFunction> corpus{
      [](double x) { return std::exp(x); },
      [](double x) { return std::sinh(x); },
      [](double x) { return x * std::abs(x); },
      [](double x) { return x > 0 ? x * x * x : 0.0; },
  };
  for (const auto& f : corpus) {
    double prev = 0;
    for (double t = 1.0 / 256; t <= 0.25; t *= 2) {
      const double w = modulus(f, 4, t, -1, 1).value;
      const double w2 = modulus(f, 4, 2 * t, -1, 1).value;
      CHECK(w >= prev);
      CHECK(w2 <= 16 * w * (1 + 1e-9) + 1e-15);
      prev = w;
    }
  }
}

TEST_CASE("ratio floor") {
  CHECK(ratio_above_floor(1e-20, 1e-20, 1e-15) == 0.0);
  CHECK(ratio_above_floor(1.0, 1e-20, 1e-15) == std::numeric_limits<double>::infinity());
  CHECK(ratio_above_floor(1.0, 4.0, 1e-15) == 0.25);
  CHECK(noise_floor(-2.0) > 0);
}

TEST_CASE("sup_abs") {
  CHECK(sup_abs([](double x) { return x; }, -3, 2, 10) == 3.0);
  CHECK(sup_abs_serial([](double x) { return x * x; }, -1, 2, 7) == 4.0);
  CHECK_THROWS(sup_abs([](double x) { return x; }, 0, 1, 0));
}

TEST_CASE("3-monotonicity checker examples") {
  TruncatedPowerSpline cube(-1, 1);
  cube.add_polynomial({0, 0, 0, 1});
  CHECK(check_3monotone_spline(cube).pass);

  TruncatedPowerSpline neg(-1, 1);
  neg.add_term(0, 3, -1);
  const auto r = check_3monotone_spline(neg);
  CHECK_FALSE(r.pass);
  CHECK(r.worst_slope.slope == doctest::Approx(-6));

  TruncatedPowerSpline down(-1, 1);
  down.add_term(0, 2, -1);  // s'' jumps down by 2
  const auto d = check_3monotone_spline(down);
  CHECK_FALSE(d.pass);
  CHECK(d.worst_jump.knot == 0.0);
  CHECK(d.worst_jump.right - d.worst_jump.left == doctest::Approx(-2));

  TruncatedPowerSpline kink(-1, 1);
  kink.add_term(0.25, 1, 1);  // s' discontinuous
  CHECK_FALSE(check_3monotone_spline(kink).pass);

  TruncatedPowerSpline up(-1, 1);
  up.add_term(-0.5, 2, 1);
  up.add_term(0.5, 3, 2);
  CHECK(check_3monotone_spline(up).pass);
}

TEST_CASE("function screen") {
  CHECK(check_function_3monotone([](double x) { return std::exp(x); }, -1, 1, 2000));
  CHECK(check_function_3monotone([](double x) { return x * std::abs(x); }, -1, 1, 2000));
  CHECK_FALSE(check_function_3monotone([](double x) { return -x * x * x; }, -1, 1, 100));
  CHECK_THROWS(check_function_3monotone([](double x) { return x; }, -1, 1, 3));
}

TEST_CASE("lemma 1 quantities for x^3 on 0..5") {
  const std::array<double, 6> x{5, 4, 3, 2, 1, 0};
  const auto r = lemma1_check([](double t) { return t * t * t; }, x);
  CHECK(r.delta3 == doctest::Approx(1));
  CHECK(r.delta4 == doctest::Approx(1));
  CHECK(r.delta5 == doctest::Approx(1));
  CHECK(r.lhs == doctest::Approx(3));
  CHECK(r.A == doctest::Approx(6));
  CHECK(r.B == doctest::Approx(6));
  CHECK(r.C == doctest::Approx(-6));
  CHECK(r.D == doctest::Approx(-6));
  CHECK(r.upper_holds);
  REQUIRE(r.lower_holds.has_value());
  CHECK(*r.lower_holds);
}

TEST_CASE("lemma 1 for a quadratic") {
  const std::array<double, 6> x{1, 0.6, 0.2, -0.2, -0.6, -1};
  const auto r = lemma1_check([](double t) { return 3 * t * t - t; }, x);
  CHECK(std::abs(r.lhs) < 1e-13);
  CHECK(std::abs(r.A) < 1e-13);
  CHECK(r.upper_holds);
  CHECK(r.lower_holds.value_or(true));
  CHECK_THROWS(lemma1_check([](double t) { return t; }, {0, 1, 2, 3, 4, 5}));
}

TEST_CASE("lemma 1 random equidistant windows") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> start(-1, 0.5), step(1e-3, 0.1);
  const std::vector<RealFunction> corpus{
      [](double x) { return std::exp(x); },
      [](double x) { return x * std::abs(x); },
      [](double x) { return x > 0 ? x * x * x : 0.0; },
  };
  for (const auto& f : corpus)
    for (int trial = 0; trial < 500; ++trial) {
      const double s = start(rng), h = step(rng);
      std::array<double, 6> x{};
      for (int i = 0; i < 6; ++i) x[i] = s + (5 - i) * h;
      const auto r = lemma1_check(f, x);
      CHECK(r.upper_holds);
      CHECK(r.lower_holds.value_or(true));
    }
}
