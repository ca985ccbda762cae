#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "tmspline/common.hpp"
#include "tmspline/knot_planner.hpp"
#include "tmspline/partition.hpp"
#include "tmspline/phi_builder.hpp"
#include "tmspline/s3_builder.hpp"
#include "tmspline/trunc_spline.hpp"

namespace tmspline {

/// Which rule produced a piece Psi_j.
enum class PieceRule {
  kRight,      // j in V+: phi_j(x, y_i, y_{i-1}, y_{i-2}) with y_i = x_{j-1}
  kLeft,       // j in V-: phi_j(x, y_{i+2}, y_{i+1}, y_i) with y_i = x_{j-1}
  kCentered,   // j in W: phi_j around y_i = d_j
  kPartner,    // j + 1 in W: phi_j with the three knots of Psi_{j+1}
  kZero,       // Psi_2 == 0
  kFullCubic,  // Psi_n = (x - x_n)(x - x_{n-1})(x - x_{n-2})
};

const char* to_string(PieceRule r);

struct Piece {
  int j = 0;
  PieceRule rule = PieceRule::kZero;
  std::array<double, 3> knots{};  // a < c < b for the phi rules
  PhiCoefficients coeffs;
  TruncatedPowerSpline spline;
};

/// Psi_j for j = 2..n. Throws AdmissibilityError("alpha-sign (*)", j) when a
/// V-piece violates 0 <= alpha <= 1, 0 <= alpha + beta <= 1.
std::map<int, Piece> build_pieces(const ClassificationTable& table, const KnotPlan& plan,
                                  const Partition& p);

/// The C^1 3-monotone cubic spline with both representations:
///   form24 = L_2(x; x_n) + sum_{j=3}^{n} Delta_j (Psi_j - Psi_{j-1})   (evaluation form)
///   form23 = L_3(x; x_n) + sum_{j=3}^{n-1} delta_j (x_{j-3} - x_{j+1}) Psi_j
/// For n <= 4 both are the cubic interpolating f at a, a+(b-a)/3, b-(b-a)/3, b.
struct MonoSpline {
  TruncatedPowerSpline form23;
  TruncatedPowerSpline form24;
  std::optional<ClassificationTable> table;
  std::optional<KnotPlan> plan;
  std::map<int, Piece> pieces;
  bool whitney_fallback = false;

  double operator()(double x) const { return form24(x); }
  /// Knot sequence ascending (a and b included).
  std::vector<double> knots() const;
};

MonoSpline build_spline(const RealFunction& f, const Partition& p);

/// Distance of every spline knot to the partition and spacing between knots.
struct TheoremMetadata {
  double h = 0;
  std::vector<double> knots;          // ascending
  std::vector<double> nearest_point;  // distance to the nearest partition point
  std::vector<double> gap;            // knot[i] - knot[i-1] (gap[0] = 0)
  bool distances_ok = true;           // all <= 3h/2
  bool gaps_ok = true;                // all >= h/2
};

TheoremMetadata theorem_metadata(const MonoSpline& s, const Partition& p);

/// Per-interval sup |f - s| on I_j against omega_4(f, h, [x_{j+4}, x_{j-5}] cap [a, b])
/// with h the largest partition step. Ordered by j = 1..n.
std::vector<IntervalError> spline_error_report(const RealFunction& f, const MonoSpline& s,
                                               const Partition& p, int grid);

nlohmann::json to_json(const MonoSpline& s);

}  // namespace tmspline
