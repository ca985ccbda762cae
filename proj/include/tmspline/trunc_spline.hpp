#pragma once

#include <array>
#include <vector>

#include <json.hpp>

#include "tmspline/partition.hpp"

namespace tmspline {

/// c * (x - knot)_+^power with (x - knot)_+ = 0 for x <= knot.
struct TruncatedTerm {
  double knot;
  int power;  // 0..3
  double coef;
};

/// c * (x - k0)(x - k1)(x - k2) * chi(x, k0): the kink function Psi_3 kept as
/// one product term. knots[0] is the anchor; the product is switched on for
/// x > knots[0].
struct PsiTerm {
  std::array<double, 3> knots;
  double coef;
};

/// Cubic power-basis coefficients c[0] + c[1] u + c[2] u^2 + c[3] u^3.
using CubicCoefs = std::array<double, 4>;

double horner(const CubicCoefs& c, double u);

/// Piecewise polynomial of degree <= 3 on ascending breakpoints. Piece i lives
/// on (t_i, t_{i+1}] (the first piece also owns t_0) and is stored in the
/// local variable u = x - t_i.
class PiecewisePoly {
 public:
  PiecewisePoly(std::vector<double> breakpoints, std::vector<CubicCoefs> pieces);

  const std::vector<double>& breakpoints() const { return bp_; }
  const std::vector<CubicCoefs>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }

  double operator()(double x) const;
  /// Limits from the left / right. At the domain ends the missing side
  /// returns the one-sided value that exists.
  double left_limit(double x) const;
  double right_limit(double x) const;

  PiecewisePoly derivative(int order = 1) const;

 private:
  std::size_t locate_left(double x) const;   // piece with t_i < x <= t_{i+1}
  std::size_t locate_right(double x) const;  // piece with t_i <= x < t_{i+1}
  std::vector<double> bp_;
  std::vector<CubicCoefs> pieces_;
};

/// A spline written as base cubic (power basis about 0) plus truncated-power
/// terms and Psi_3 product terms, on the domain [lo, hi].
class TruncatedPowerSpline {
 public:
  TruncatedPowerSpline(double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const CubicCoefs& base() const { return base_; }
  const std::vector<TruncatedTerm>& terms() const { return terms_; }
  const std::vector<PsiTerm>& psi_terms() const { return psi_; }

  void add_polynomial(const CubicCoefs& c, double scale = 1.0);
  void add_term(double knot, int power, double coef);
  void add_psi(const std::array<double, 3>& knots, double coef);
  /// this += scale * other (domains must match).
  void add(const TruncatedPowerSpline& other, double scale = 1.0);

  /// Throws DomainError for x outside [lo, hi].
  double operator()(double x) const;

  /// True when no truncated term has power 0 or 1 (such a spline is C^1 at
  /// every truncated-term knot). Psi terms are excluded from the certificate.
  bool c1_certificate() const;

  /// Distinct knots of all terms lying strictly inside (lo, hi), ascending.
  std::vector<double> interior_knots() const;

 private:
  double lo_, hi_;
  CubicCoefs base_{};
  std::vector<TruncatedTerm> terms_;
  std::vector<PsiTerm> psi_;
};

/// Exact piecewise-cubic expansion; breakpoints are lo, interior knots, hi.
PiecewisePoly to_piecewise(const TruncatedPowerSpline& s);

/// order-th derivative as a piecewise polynomial (order in 1..3) exposing
/// one-sided limits at the knots.
PiecewisePoly derivative(const TruncatedPowerSpline& s, int order);

/// Psi_3(x, x_j) = (x - x_j)(x - x_{j-1})(x - x_{j-2}) chi(x, x_j) on [a,b],
/// for 3 <= j <= n; j == 2 gives the identically zero function.
TruncatedPowerSpline psi3(const Partition& p, int j);

nlohmann::json to_json(const TruncatedPowerSpline& s);
TruncatedPowerSpline spline_from_json(const nlohmann::json& j);

}  // namespace tmspline
