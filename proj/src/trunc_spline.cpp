#include "tmspline/trunc_spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "tmspline/common.hpp"

namespace tmspline {
namespace {

// (u + s)^p as coefficients in u.
CubicCoefs shifted_power(double s, int p) {
  switch (p) {
    case 0: return {1, 0, 0, 0};
    case 1: return {s, 1, 0, 0};
    case 2: return {s * s, 2 * s, 1, 0};
    case 3: return {s * s * s, 3 * s * s, 3 * s, 1};
    default: throw std::invalid_argument("truncated power must be in 0..3");
  }
}

// (u + s0)(u + s1)(u + s2)
CubicCoefs shifted_product(double s0, double s1, double s2) {
  return {s0 * s1 * s2, s0 * s1 + s0 * s2 + s1 * s2, s0 + s1 + s2, 1};
}

// Taylor shift of a cubic about 0 to the variable u = x - t.
CubicCoefs shift_base(const CubicCoefs& c, double t) {
  return {((c[3] * t + c[2]) * t + c[1]) * t + c[0],
          (3 * c[3] * t + 2 * c[2]) * t + c[1],
          3 * c[3] * t + c[2],
          c[3]};
}

void axpy(CubicCoefs& y, double a, const CubicCoefs& x) {
  for (int d = 0; d < 4; ++d) y[d] += a * x[d];
}

}  // namespace

double horner(const CubicCoefs& c, double u) { return ((c[3] * u + c[2]) * u + c[1]) * u + c[0]; }

// ---------------------------------------------------------------------------
// PiecewisePoly

PiecewisePoly::PiecewisePoly(std::vector<double> breakpoints, std::vector<CubicCoefs> pieces)
    : bp_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (bp_.size() < 2 || pieces_.size() + 1 != bp_.size())
    throw std::invalid_argument("piecewise polynomial: breakpoints/pieces mismatch");
  if (!std::is_sorted(bp_.begin(), bp_.end()) ||
      std::adjacent_find(bp_.begin(), bp_.end()) != bp_.end())
    throw std::invalid_argument("piecewise polynomial: breakpoints must increase strictly");
}

std::size_t PiecewisePoly::locate_left(double x) const {
  // first breakpoint >= x, piece before it
  auto it = std::lower_bound(bp_.begin() + 1, bp_.end() - 1, x);
  return static_cast<std::size_t>(it - bp_.begin()) - 1;
}

std::size_t PiecewisePoly::locate_right(double x) const {
  auto it = std::upper_bound(bp_.begin() + 1, bp_.end() - 1, x);
  return static_cast<std::size_t>(it - bp_.begin()) - 1;
}

double PiecewisePoly::operator()(double x) const {
  if (x < bp_.front() || x > bp_.back()) throw DomainError("piecewise polynomial: x outside domain");
  const auto i = locate_left(x);
  return horner(pieces_[i], x - bp_[i]);
}

double PiecewisePoly::left_limit(double x) const {
  if (x <= bp_.front()) return horner(pieces_.front(), x - bp_.front());
  const auto i = locate_left(x);
  return horner(pieces_[i], x - bp_[i]);
}

double PiecewisePoly::right_limit(double x) const {
  if (x >= bp_.back()) return horner(pieces_.back(), x - bp_[bp_.size() - 2]);
  const auto i = locate_right(x);
  return horner(pieces_[i], x - bp_[i]);
}

PiecewisePoly PiecewisePoly::derivative(int order) const {
  if (order < 0) throw std::invalid_argument("derivative order must be >= 0");
  std::vector<CubicCoefs> out = pieces_;
  for (int k = 0; k < order; ++k)
    for (auto& c : out) c = {c[1], 2 * c[2], 3 * c[3], 0};
  return {bp_, std::move(out)};
}

// ---------------------------------------------------------------------------
// TruncatedPowerSpline

TruncatedPowerSpline::TruncatedPowerSpline(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!(lo < hi)) throw std::invalid_argument("spline domain must satisfy lo < hi");
}

void TruncatedPowerSpline::add_polynomial(const CubicCoefs& c, double scale) { axpy(base_, scale, c); }

void TruncatedPowerSpline::add_term(double knot, int power, double coef) {
  if (power < 0 || power > 3) throw std::invalid_argument("truncated power must be in 0..3");
  if (knot < lo_ || knot > hi_)
    throw std::invalid_argument("knot " + std::to_string(knot) + " outside spline domain");
  terms_.push_back({knot, power, coef});
}

void TruncatedPowerSpline::add_psi(const std::array<double, 3>& knots, double coef) {
  if (knots[0] < lo_ || knots[0] > hi_)
    throw std::invalid_argument("psi anchor outside spline domain");
  psi_.push_back({knots, coef});
}

void TruncatedPowerSpline::add(const TruncatedPowerSpline& other, double scale) {
  if (other.lo_ != lo_ || other.hi_ != hi_) throw std::invalid_argument("spline domains differ");
  axpy(base_, scale, other.base_);
  for (const auto& t : other.terms_) terms_.push_back({t.knot, t.power, scale * t.coef});
  for (const auto& t : other.psi_) psi_.push_back({t.knots, scale * t.coef});
}

double TruncatedPowerSpline::operator()(double x) const {
  if (!(x >= lo_ && x <= hi_))
    throw DomainError("spline evaluated at " + std::to_string(x) + " outside its domain");
  double v = horner(base_, x);
  for (const auto& t : terms_) {
    if (!(x > t.knot)) continue;
    const double u = x - t.knot;
    double p = 1;
    for (int k = 0; k < t.power; ++k) p *= u;
    v += t.coef * p;
  }
  for (const auto& t : psi_)
    if (x > t.knots[0]) v += t.coef * (x - t.knots[0]) * (x - t.knots[1]) * (x - t.knots[2]);
  return v;
}

bool TruncatedPowerSpline::c1_certificate() const {
  return std::none_of(terms_.begin(), terms_.end(), [](const TruncatedTerm& t) {
    return t.power < 2 && t.coef != 0.0;
  });
}

std::vector<double> TruncatedPowerSpline::interior_knots() const {
  std::vector<double> k;
  for (const auto& t : terms_)
    if (t.knot > lo_ && t.knot < hi_) k.push_back(t.knot);
  for (const auto& t : psi_)
    if (t.knots[0] > lo_ && t.knots[0] < hi_) k.push_back(t.knots[0]);
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

PiecewisePoly to_piecewise(const TruncatedPowerSpline& s) {
  std::vector<double> bp{s.lo()};
  const auto knots = s.interior_knots();
  bp.insert(bp.end(), knots.begin(), knots.end());
  bp.push_back(s.hi());

  std::vector<CubicCoefs> pieces(bp.size() - 1);
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double t = bp[i];
    CubicCoefs c = shift_base(s.base(), t);
    // on (t_i, t_{i+1}] a term is switched on iff its knot <= t_i
    for (const auto& term : s.terms())
      if (term.knot <= t) axpy(c, term.coef, shifted_power(t - term.knot, term.power));
    for (const auto& term : s.psi_terms())
      if (term.knots[0] <= t)
        axpy(c, term.coef,
             shifted_product(t - term.knots[0], t - term.knots[1], t - term.knots[2]));
    pieces[i] = c;
  }
  return {std::move(bp), std::move(pieces)};
}

PiecewisePoly derivative(const TruncatedPowerSpline& s, int order) {
  if (order < 1 || order > 3) throw std::invalid_argument("derivative order must be in 1..3");
  return to_piecewise(s).derivative(order);
}

TruncatedPowerSpline psi3(const Partition& p, int j) {
  if (j < 2 || j > p.n())
    throw std::invalid_argument("psi3 index j=" + std::to_string(j) + " outside 2..n");
  TruncatedPowerSpline s(p.a(), p.b());
  if (j >= 3) s.add_psi({p.x(j), p.x(j - 1), p.x(j - 2)}, 1.0);
  return s;
}

nlohmann::json to_json(const TruncatedPowerSpline& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : s.terms()) terms.push_back({{"knot", t.knot}, {"power", t.power}, {"coef", t.coef}});
  nlohmann::json psi = nlohmann::json::array();
  for (const auto& t : s.psi_terms()) psi.push_back({{"knots", t.knots}, {"coef", t.coef}});
  return {{"domain", {s.lo(), s.hi()}},
          {"base", s.base()},
          {"terms", std::move(terms)},
          {"special_psi", std::move(psi)}};
}

TruncatedPowerSpline spline_from_json(const nlohmann::json& j) {
  const auto dom = j.at("domain").get<std::array<double, 2>>();
  TruncatedPowerSpline s(dom[0], dom[1]);
  s.add_polynomial(j.at("base").get<CubicCoefs>());
  for (const auto& t : j.at("terms"))
    s.add_term(t.at("knot").get<double>(), t.at("power").get<int>(), t.at("coef").get<double>());
  if (j.contains("special_psi"))
    for (const auto& t : j.at("special_psi"))
      s.add_psi(t.at("knots").get<std::array<double, 3>>(), t.value("coef", 1.0));
  return s;
}

}  // namespace tmspline
