#pragma once

#include <map>
#include <span>
#include <vector>

#include <json.hpp>

#include "tmspline/common.hpp"
#include "tmspline/partition.hpp"

namespace tmspline {

/// How a summation index j in J = {3, ..., n-1} gets its smoothed kink function.
enum class IndexRole {
  kVPlus,     // Delta_{j+1} <= Delta_j: knots x_{j-1} and the next two to the right
  kVMinus,    // Delta_{j+1} >  Delta_j: the two knots to the left and x_{j-1}
  kW,         // strict local maximum of Delta: knots around the relocated d_j
  kWPartner,  // j + 1 in W: shares the three knots of j + 1
};

const char* to_string(IndexRole r);

/// Third/fourth divided differences of f on the partition and the index
/// classification derived from them. Vectors are indexed by the partition
/// index j; entries outside the documented range are 0.
struct ClassificationTable {
  int n = 0;
  std::vector<double> fx;          // f(x_j), j = 0..n
  std::vector<double> Delta;       // [x_j, ..., x_{j-3}; f], j = 3..n (raw)
  std::vector<double> Delta_plus;  // max(Delta_j, 0)
  std::vector<double> Delta_err;   // rounding bound of Delta_j
  std::vector<double> delta;       // [x_{j+1}, ..., x_{j-3}; f], j = 3..n-1
  std::vector<double> Lambda;      // (x_{j-3} - x_j) Delta_plus_j, j = 3..n
  std::vector<int> W, Z, Vplus, Vminus;
  std::map<int, double> d;      // parabola vertex, j in W
  std::map<int, double> H;      // minimum of the parabola, j in W
  std::map<int, double> H_bar;  // H_j with Lambda_j at its balanced value, j in W

  /// Delta_a > Delta_b beyond the rounding bounds of both.
  bool strictly_greater(int a, int b) const;
  bool in_W(int j) const;
  bool in_Z(int j) const;
  /// Role of j in J = {3..n-1}.
  IndexRole role(int j) const;
};

/// f values are taken at the partition points. Requires n >= 5.
/// Throws AdmissibilityError("d_j in I_{j-1}", j) when a vertex leaves its
/// interval by more than 1e-12 (b - a); smaller excursions are projected.
ClassificationTable classify(const RealFunction& f, const Partition& p);
/// Same, from values f(x_j) in descending-point order (index j).
ClassificationTable classify_values(std::span<const double> fx, const Partition& p);

/// Final knot sequence y_0 = b > y_1 > ... > y_k = a.
struct KnotPlan {
  std::vector<double> y;
  std::map<int, int> i_of;    // j in V: y[i_of[j]] = x_{j-1}
  std::map<int, int> i_star;  // j in W: y[i_star[j]] = d_j
  bool count_bound_ok = true;  // n - [n/3] - 1 <= k <= n

  int k() const { return static_cast<int>(y.size()) - 1; }
  std::vector<double> ascending() const { return {y.rbegin(), y.rend()}; }
};

/// Builds Y and checks the knot-gap bound h_* <= y_{i-1} - y_i < 4 h_* for a
/// nearest partition interval length h_* (AdmissibilityError "knot gap").
KnotPlan plan_knots(const ClassificationTable& table, const Partition& p);

nlohmann::json to_json(const ClassificationTable& t);
nlohmann::json to_json(const KnotPlan& plan);

}  // namespace tmspline
