#include "tmspline/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tmspline {

Partition Partition::equidistant(double a, double b, int n) {
  if (n < 1) throw std::invalid_argument("partition needs n >= 1, got " + std::to_string(n));
  if (!(a < b)) throw std::invalid_argument("partition needs a < b");
  std::vector<double> x(static_cast<std::size_t>(n) + 1);
  const double len = b - a;
  for (int j = 0; j <= n; ++j) x[j] = a + len * static_cast<double>(n - j) / n;
  x.front() = b;
  x.back() = a;
  return Partition(std::move(x));
}

Partition Partition::from_ascending(std::span<const double> points) {
  if (points.size() < 2) throw std::invalid_argument("partition needs at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) throw std::invalid_argument("partition point is not finite");
    if (i > 0 && !(points[i - 1] < points[i]))
      throw std::invalid_argument("partition points must be strictly increasing (index " +
                                  std::to_string(i) + ")");
  }
  return Partition(std::vector<double>(points.rbegin(), points.rend()));
}

double Partition::x(int j) const {
  if (j < 0 || j > n()) throw std::out_of_range("partition index " + std::to_string(j));
  return x_[static_cast<std::size_t>(j)];
}

double Partition::clamp(int nu) const {
  if (nu > n()) return a();
  if (nu < 0) return b();
  return x_[static_cast<std::size_t>(nu)];
}

double Partition::h(int j) const {
  if (j < 1 || j > n()) throw std::out_of_range("interval index " + std::to_string(j));
  return x_[j - 1] - x_[j];
}

double Partition::min_h() const {
  double m = h(1);
  for (int j = 2; j <= n(); ++j) m = std::min(m, h(j));
  return m;
}

double Partition::max_h() const {
  double m = h(1);
  for (int j = 2; j <= n(); ++j) m = std::max(m, h(j));
  return m;
}

bool Partition::is_equidistant(double rel_tol) const {
  const double mean = mean_h();
  const double tol = rel_tol * (b() - a());
  for (int j = 1; j <= n(); ++j)
    if (std::abs(h(j) - mean) > tol) return false;
  return true;
}

std::vector<double> Partition::ascending() const { return {x_.rbegin(), x_.rend()}; }

nlohmann::json to_json(const Partition& p) {
  return {{"a", p.a()}, {"b", p.b()}, {"points_ascending", p.ascending()}};
}

Partition partition_from_json(const nlohmann::json& j) {
  auto pts = j.at("points_ascending").get<std::vector<double>>();
  auto p = Partition::from_ascending(pts);
  if (j.contains("a") && j.at("a").get<double>() != p.a())
    throw std::invalid_argument("partition json: 'a' disagrees with points_ascending");
  if (j.contains("b") && j.at("b").get<double>() != p.b())
    throw std::invalid_argument("partition json: 'b' disagrees with points_ascending");
  return p;
}

}  // namespace tmspline
