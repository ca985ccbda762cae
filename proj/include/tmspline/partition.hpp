#pragma once

#include <span>
#include <vector>

#include <json.hpp>

namespace tmspline {

/// Partition a = x_n < x_{n-1} < ... < x_1 < x_0 = b of [a,b].
///
/// Points are stored in descending order so that x(j) follows the indexing
/// used by the construction (x(0) = b, x(n) = a, I_j = [x_j, x_{j-1}]).
/// The public constructors take ascending input.
class Partition {
 public:
  static Partition equidistant(double a, double b, int n);
  static Partition from_ascending(std::span<const double> points);

  double a() const { return x_.back(); }
  double b() const { return x_.front(); }
  int n() const { return static_cast<int>(x_.size()) - 1; }

  /// x_j for 0 <= j <= n.
  double x(int j) const;
  /// x_j with the clamping convention x_nu = a for nu > n, x_nu = b for nu < 0.
  double clamp(int nu) const;
  /// h_j = x_{j-1} - x_j for 1 <= j <= n.
  double h(int j) const;
  double min_h() const;
  double max_h() const;
  /// (b - a) / n
  double mean_h() const { return (b() - a()) / n(); }

  bool is_equidistant(double rel_tol = 1e-12) const;

  const std::vector<double>& descending() const { return x_; }
  std::vector<double> ascending() const;

 private:
  explicit Partition(std::vector<double> descending) : x_(std::move(descending)) {}
  std::vector<double> x_;
};

nlohmann::json to_json(const Partition& p);
Partition partition_from_json(const nlohmann::json& j);

}  // namespace tmspline
