#include "tmspline/mono_builder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tmspline/divdiff.hpp"
#include "tmspline/verify.hpp"
#include "parallel_errors.hpp"

namespace tmspline {
namespace {

constexpr double kCoefTol = 1e-12;

// (x - r0)(x - r1)(x - r2) in the power basis about 0
CubicCoefs product_cubic(double r0, double r1, double r2) {
  return {-r0 * r1 * r2, r0 * r1 + r0 * r2 + r1 * r2, -(r0 + r1 + r2), 1};
}

CubicCoefs interpolant_about_zero(const Partition& p, const std::vector<double>& fx, int first,
                                  int count) {
  const auto& x = p.descending();
  return interpolating_cubic(std::span<const double>(x.data() + first - count + 1, count),
                             std::span<const double>(fx.data() + first - count + 1, count), 0.0);
}

Piece make_phi_piece(int j, PieceRule rule, double a, double c, double b, const Partition& p) {
  Piece piece{j, rule, {a, c, b}, {}, TruncatedPowerSpline(p.a(), p.b())};
  piece.coeffs = phi_coefficients(a, c, b, p.x(j), p.x(j - 1), p.x(j - 2));
  piece.spline = build_phi(piece.coeffs, a, c, b, p.a(), p.b());
  return piece;
}

void check_star_conditions(const Piece& piece) {
  const double al = piece.coeffs.alpha, ab = piece.coeffs.alpha + piece.coeffs.beta;
  const auto inside = [](double v) { return v >= -kCoefTol && v <= 1 + kCoefTol; };
  if (!inside(al) || !inside(ab))
    throw AdmissibilityError("alpha-sign (*)", piece.j,
                             "alpha = " + std::to_string(al) +
                                 ", alpha + beta = " + std::to_string(ab) + " not in [0, 1]");
}

MonoSpline whitney_cubic(const RealFunction& f, const Partition& p) {
  const double a = p.a(), b = p.b();
  const std::array<double, 4> t{a, a + (b - a) / 3, b - (b - a) / 3, b};
  std::array<double, 4> v{};
  for (int i = 0; i < 4; ++i) v[i] = f(t[i]);
  MonoSpline s{TruncatedPowerSpline(a, b), TruncatedPowerSpline(a, b), {}, {}, {}, true};
  const auto c = interpolating_cubic(t, v, 0.0);
  s.form23.add_polynomial(c);
  s.form24.add_polynomial(c);
  return s;
}

}  // namespace

const char* to_string(PieceRule r) {
  switch (r) {
    case PieceRule::kRight: return "right";
    case PieceRule::kLeft: return "left";
    case PieceRule::kCentered: return "centered";
    case PieceRule::kPartner: return "partner";
    case PieceRule::kZero: return "zero";
    case PieceRule::kFullCubic: return "full_cubic";
  }
  return "?";
}

std::map<int, Piece> build_pieces(const ClassificationTable& table, const KnotPlan& plan,
                                  const Partition& p) {
  const int n = p.n();
  const auto& y = plan.y;
  const int k = plan.k();
  auto at = [&](int i) {
    if (i < 0 || i > k) throw std::logic_error("knot plan index out of range");
    return y[i];
  };

  std::map<int, Piece> pieces;
  pieces.emplace(2, Piece{2, PieceRule::kZero, {}, {}, TruncatedPowerSpline(p.a(), p.b())});
  {
    Piece full{n, PieceRule::kFullCubic, {}, {}, TruncatedPowerSpline(p.a(), p.b())};
    full.spline.add_polynomial(product_cubic(p.x(n), p.x(n - 1), p.x(n - 2)));
    pieces.emplace(n, std::move(full));
  }

  for (int j = 3; j <= n - 1; ++j) {
    switch (table.role(j)) {
      case IndexRole::kVPlus: {
        const int i = plan.i_of.at(j);
        auto piece = make_phi_piece(j, PieceRule::kRight, at(i), at(i - 1), at(i - 2), p);
        check_star_conditions(piece);
        pieces.emplace(j, std::move(piece));
        break;
      }
      case IndexRole::kVMinus: {
        const int i = plan.i_of.at(j);
        auto piece = make_phi_piece(j, PieceRule::kLeft, at(i + 2), at(i + 1), at(i), p);
        check_star_conditions(piece);
        pieces.emplace(j, std::move(piece));
        break;
      }
      case IndexRole::kW: {
        const int i = plan.i_star.at(j);
        pieces.emplace(j, make_phi_piece(j, PieceRule::kCentered, at(i + 1), at(i), at(i - 1), p));
        break;
      }
      case IndexRole::kWPartner: {
        const int i = plan.i_star.at(j + 1);
        pieces.emplace(j, make_phi_piece(j, PieceRule::kPartner, at(i + 1), at(i), at(i - 1), p));
        break;
      }
    }
  }
  return pieces;
}

MonoSpline build_spline(const RealFunction& f, const Partition& p) {
  const int n = p.n();
  if (n <= 4) return whitney_cubic(f, p);

  MonoSpline s{TruncatedPowerSpline(p.a(), p.b()), TruncatedPowerSpline(p.a(), p.b()), {}, {}, {},
               false};
  s.table = classify(f, p);
  s.plan = plan_knots(*s.table, p);
  s.pieces = build_pieces(*s.table, *s.plan, p);
  const auto& t = *s.table;

  // source of truth: telescoped form, summed in ascending j
  s.form24.add_polynomial(interpolant_about_zero(p, t.fx, n, 3));
  for (int j = 3; j <= n; ++j) {
    s.form24.add(s.pieces.at(j).spline, t.Delta[j]);
    if (j - 1 >= 3) s.form24.add(s.pieces.at(j - 1).spline, -t.Delta[j]);
  }

  s.form23.add_polynomial(interpolant_about_zero(p, t.fx, n, 4));
  for (int j = 3; j <= n - 1; ++j)
    s.form23.add(s.pieces.at(j).spline, t.delta[j] * (p.x(j - 3) - p.x(j + 1)));
  return s;
}

std::vector<double> MonoSpline::knots() const {
  if (plan) return plan->ascending();
  return {form24.lo(), form24.hi()};
}

TheoremMetadata theorem_metadata(const MonoSpline& s, const Partition& p) {
  TheoremMetadata m;
  m.h = p.mean_h();
  m.knots = s.knots();
  const auto pts = p.ascending();
  const double tol = 1e-12 * (p.b() - p.a());
  for (std::size_t i = 0; i < m.knots.size(); ++i) {
    const double y = m.knots[i];
    auto it = std::lower_bound(pts.begin(), pts.end(), y);
    double dist = std::numeric_limits<double>::infinity();
    if (it != pts.end()) dist = std::min(dist, *it - y);
    if (it != pts.begin()) dist = std::min(dist, y - *(it - 1));
    m.nearest_point.push_back(dist);
    m.gap.push_back(i == 0 ? 0.0 : y - m.knots[i - 1]);
    if (dist > 1.5 * m.h + tol) m.distances_ok = false;
    if (i > 0 && m.gap.back() < 0.5 * m.h - tol) m.gaps_ok = false;
  }
  return m;
}

std::vector<IntervalError> spline_error_report(const RealFunction& f, const MonoSpline& s,
                                               const Partition& p, int grid) {
  if (grid < 32) throw std::invalid_argument("spline_error_report needs grid >= 32 per interval");
  const int n = p.n();
  const double h = p.max_h();
  std::vector<IntervalError> rows(static_cast<std::size_t>(n));
  // rounding floor from max |f(x_j)| over the whole partition
  double fmax = 0;
  for (double x : p.descending()) fmax = std::max(fmax, std::abs(f(x)));
  const double floor = noise_floor(fmax);
  ParallelErrors errors;
#ifdef TMSPLINE_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int j = 1; j <= n; ++j) errors.run([&] {
    IntervalError& r = rows[j - 1];
    r.j = j;
    r.xj = p.x(j);
    const RealFunction diff = [&](double t) { return f(t) - s(t); };
    r.sup_error = sup_abs_serial(diff, p.x(j), p.x(j - 1), grid);
    const int lo = std::min(j + 4, n);
    r.omega4 = modulus_serial(f, 4, h, p.x(lo), p.clamp(j - 5)).value;
    r.ratio = ratio_above_floor(r.sup_error, r.omega4, floor);
  });
  errors.rethrow();
  return rows;
}

nlohmann::json to_json(const MonoSpline& s) {
  nlohmann::json j = to_json(s.form24);
  j["form23"] = to_json(s.form23);
  j["whitney_fallback"] = s.whitney_fallback;
  if (s.plan) j["plan"] = to_json(*s.plan);
  if (s.table) j["classification"] = to_json(*s.table);
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& [idx, piece] : s.pieces) {
    nlohmann::json d = {{"j", idx}, {"rule", to_string(piece.rule)}};
    if (piece.rule != PieceRule::kZero && piece.rule != PieceRule::kFullCubic) {
      d["knots"] = piece.knots;
      d["alpha"] = piece.coeffs.alpha;
      d["beta"] = piece.coeffs.beta;
      d["gamma"] = piece.coeffs.gamma;
    }
    pieces.push_back(std::move(d));
  }
  j["pieces"] = std::move(pieces);
  return j;
}

}  // namespace tmspline
