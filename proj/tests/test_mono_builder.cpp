#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "tmspline/mono_builder.hpp"
#include "tmspline/verify.hpp"

using namespace tmspline;

namespace {

const RealFunction kExp = [](double x) { return std::exp(x); };
const RealFunction kX2Sign = [](double x) { return x * std::abs(x); };

std::vector<RealFunction> corpus() {
  return {kExp,
          [](double x) { return x * x * x; },
          [](double x) { return std::sinh(x); },
          kX2Sign,
          [](double x) { return x > 0 ? x * x * x : 0.0; },
          [](double x) { return std::pow(0.5 * (x + 1), 4) / 4; }};
}

double rel(double u, double v) { return std::abs(u - v) / std::max(1.0, std::abs(v)); }

}  // namespace

TEST_CASE("cubic reproduction") {
  const RealFunction c = [](double x) { return x * x * x + 2 * x * x - x + 1; };
  auto p = Partition::equidistant(-1, 1, 10);
  const auto s = build_spline(c, p);
  CHECK(oracle::grid_sup([&](double x) { return c(x) - s(x); }, -1, 1, 4000) <= 1e-11);
  for (int j = 3; j <= 9; ++j) CHECK(std::abs(s.table->delta[j]) < 1e-12);
}

TEST_CASE("small n falls back to the Whitney cubic") {
  for (int n : {1, 2, 3, 4}) {
    auto p = Partition::equidistant(-1, 1, n);
    const auto s = build_spline(kExp, p);
    CHECK(s.whitney_fallback);
    CHECK_FALSE(s.plan.has_value());
    for (double t : {-1.0, -1.0 / 3, 1.0 / 3, 1.0}) CHECK(s(t) == doctest::Approx(kExp(t)));
    CHECK(check_3monotone_spline(s.form24).pass);
    CHECK(s.knots() == std::vector<double>{-1, 1});
  }
}

TEST_CASE("exp pieces use partition knots only") {
  auto p = Partition::equidistant(-1, 1, 16);
  const auto s = build_spline(kExp, p);
  const std::set<double> pts(p.descending().begin(), p.descending().end());
  for (const auto& [j, piece] : s.pieces) {
    if (j == 2) CHECK(piece.rule == PieceRule::kZero);
    else if (j == p.n()) CHECK(piece.rule == PieceRule::kFullCubic);
    else {
      CHECK((piece.rule == PieceRule::kRight || piece.rule == PieceRule::kLeft));
      for (double k : piece.knots) CHECK(pts.count(k) == 1);
    }
  }
  CHECK(check_3monotone_spline(s.form24).pass);
}

TEST_CASE("x^2 sign(x): the W index and its partner share knots") {
  auto p = Partition::equidistant(-1, 1, 8);
  const auto s = build_spline(kX2Sign, p);
  REQUIRE(s.table->W.size() == 1);
  const int j = s.table->W.front();
  const auto& w = s.pieces.at(j);
  const auto& partner = s.pieces.at(j - 1);
  CHECK(w.rule == PieceRule::kCentered);
  CHECK(partner.rule == PieceRule::kPartner);
  CHECK(w.knots == partner.knots);
  CHECK(w.knots[1] == s.table->d.at(j));
  CHECK(check_3monotone_spline(s.form24).pass);
}

TEST_CASE("pieces match psi3 outside their modified interval") {
  for (const auto& f : corpus())
    for (int n : {8, 16}) {
      auto p = Partition::equidistant(-1, 1, n);
      const auto s = build_spline(f, p);
      for (const auto& [j, piece] : s.pieces) {
        if (piece.rule == PieceRule::kZero || piece.rule == PieceRule::kFullCubic) continue;
        const double lo = std::min(piece.knots[0], p.x(j));
        const double hi = piece.knots[2];
        for (int i = 0; i <= 50; ++i) {
          const double left = -1 + (lo + 1) * i / 50;
          CHECK(std::abs(piece.spline(left)) <= 1e-12);
          const double right = hi + (1 - hi) * i / 50;
          const double psi = oracle::psi3_product(right, p.x(j), p.x(j - 1), p.x(j - 2));
          CHECK(rel(piece.spline(right), psi) <= 1e-9);
        }
        CHECK(piece.spline.c1_certificate());
      }
    }
}

TEST_CASE("alpha-condition and gamma sign on V pieces") {
  for (const auto& f : corpus())
    for (int n : {5, 8, 16, 32, 64}) {
      auto p = Partition::equidistant(-1, 1, n);
      const auto s = build_spline(f, p);
      for (const auto& [j, piece] : s.pieces) {
        if (piece.rule != PieceRule::kRight && piece.rule != PieceRule::kLeft) continue;
        CHECK(piece.coeffs.alpha >= -1e-12);
        CHECK(piece.coeffs.alpha <= 1 + 1e-12);
        CHECK(piece.coeffs.alpha + piece.coeffs.beta >= -1e-12);
        CHECK(piece.coeffs.alpha + piece.coeffs.beta <= 1 + 1e-12);
        const double sign = piece.rule == PieceRule::kRight ? 1.0 : -1.0;
        CHECK(sign * piece.coeffs.gamma > 0);
      }
    }
}

TEST_CASE("two representations, interpolation at the ends, C1, knots in Y") {
  std::mt19937_64 rng(51);
  for (const auto& f : corpus())
    for (int n : {5, 8, 16, 32, 64}) {
      auto p = Partition::equidistant(-1, 1, n);
      const auto s = build_spline(f, p);
      for (double x : oracle::random_points(rng, -1, 1, 1000)) CHECK(rel(s.form23(x), s(x)) <= 1e-9);
      CHECK(rel(s(-1), f(-1)) <= 1e-12);
      CHECK(rel(s(1), f(1)) <= 1e-12);

      const auto d1 = derivative(s.form24, 1);
      for (double k : s.form24.interior_knots())
        CHECK(rel(d1.left_limit(k), d1.right_limit(k)) <= 1e-9);
      const auto Y = s.knots();
      const std::set<double> y(Y.begin(), Y.end());
      for (double k : s.form24.interior_knots()) CHECK(y.count(k) == 1);

      const auto report = check_3monotone_spline(s.form24);
      CHECK(report.pass);
    }
}

TEST_CASE("theorem metadata") {
  auto p = Partition::equidistant(-1, 1, 16);
  const auto e = theorem_metadata(build_spline(kExp, p), p);
  for (std::size_t i = 0; i < e.knots.size(); ++i) {
    CHECK(e.nearest_point[i] == 0.0);
    if (i > 0) CHECK(e.gap[i] == doctest::Approx(p.mean_h()));
  }
  const auto w = theorem_metadata(build_spline(kX2Sign, p), p);
  CHECK(w.distances_ok);
  CHECK(w.gaps_ok);
  for (double d : w.nearest_point) CHECK(d <= p.mean_h());
}

TEST_CASE("per-interval report") {
  auto p = Partition::equidistant(-1, 1, 16);
  const auto s = build_spline(kExp, p);
  const auto rows = spline_error_report(kExp, s, p, 64);
  REQUIRE(rows.size() == 16);
  for (const auto& r : rows) {
    CHECK(r.omega4 > 0);
    CHECK(r.ratio < 1);
  }
  CHECK_THROWS(spline_error_report(kExp, s, p, 8));
}

TEST_CASE("negative input is built but not certified") {
  auto p = Partition::equidistant(-1, 1, 8);
  const auto s = build_spline([](double x) { return -x * x * x; }, p);
  CHECK_FALSE(check_3monotone_spline(s.form24).pass);
}

TEST_CASE("json") {
  auto p = Partition::equidistant(-1, 1, 8);
  const auto j = to_json(build_spline(kX2Sign, p));
  CHECK(j.contains("domain"));
  CHECK(j.contains("terms"));
  CHECK(j.contains("form23"));
  CHECK(j["plan"]["k"] == 7);
  CHECK(j["pieces"].size() == 7);  // j = 2..8
  const auto back = spline_from_json(j);
  CHECK(back(0.3) == doctest::Approx(build_spline(kX2Sign, p)(0.3)));
}
