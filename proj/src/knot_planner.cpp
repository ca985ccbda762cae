#include "tmspline/knot_planner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tmspline/divdiff.hpp"

namespace tmspline {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 64 ulps of the magnitude of the terms summed by the divided difference.
double divided_difference_error(std::span<const double> t, std::span<const double> v) {
  double size = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double w = 1;
    for (std::size_t m = 0; m < t.size(); ++m)
      if (m != i) w *= t[i] - t[m];
    size += std::abs(v[i] / w);
  }
  return 64 * kEps * size;
}

struct Parabola {
  double vertex, minimum;
};

// L1 (x-x0)(x-x1) + L2 (x-x1)(x-x2) + L3 (x-x2)(x-x3) = (L1+L2+L3)(x-d)^2 + H
Parabola three_term_parabola(const std::array<double, 4>& x, double L1, double L2, double L3) {
  const double sum = L1 + L2 + L3;
  if (!(sum > 0)) return {0.5 * (x[1] + x[2]), 0.0};
  const double d = ((x[0] + x[1]) * L1 + (x[1] + x[2]) * L2 + (x[2] + x[3]) * L3) / (2 * sum);
  const double H = L1 * (d - x[0]) * (d - x[1]) + L2 * (d - x[1]) * (d - x[2]) +
                   L3 * (d - x[2]) * (d - x[3]);
  return {d, H};
}

}  // namespace

const char* to_string(IndexRole r) {
  switch (r) {
    case IndexRole::kVPlus: return "V+";
    case IndexRole::kVMinus: return "V-";
    case IndexRole::kW: return "W";
    case IndexRole::kWPartner: return "W-1";
  }
  return "?";
}

bool ClassificationTable::strictly_greater(int a, int b) const {
  return Delta_plus[a] - Delta_plus[b] > Delta_err[a] + Delta_err[b];
}

bool ClassificationTable::in_W(int j) const { return std::binary_search(W.begin(), W.end(), j); }
bool ClassificationTable::in_Z(int j) const { return std::binary_search(Z.begin(), Z.end(), j); }

IndexRole ClassificationTable::role(int j) const {
  if (j < 3 || j > n - 1) throw std::out_of_range("role: j outside J = {3..n-1}");
  if (in_W(j)) return IndexRole::kW;
  if (in_W(j + 1)) return IndexRole::kWPartner;
  return strictly_greater(j + 1, j) ? IndexRole::kVMinus : IndexRole::kVPlus;
}

ClassificationTable classify(const RealFunction& f, const Partition& p) {
  std::vector<double> fx;
  fx.reserve(p.descending().size());
  for (double x : p.descending()) fx.push_back(f(x));
  return classify_values(fx, p);
}

ClassificationTable classify_values(std::span<const double> fx, const Partition& p) {
  const int n = p.n();
  if (n < 5) throw std::invalid_argument("classification needs n >= 5, got " + std::to_string(n));
  if (fx.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("classification needs one value per partition point");
  const auto& x = p.descending();

  ClassificationTable t;
  t.n = n;
  t.fx.assign(fx.begin(), fx.end());
  const auto size = static_cast<std::size_t>(n) + 2;
  t.Delta.assign(size, 0.0);
  t.Delta_plus.assign(size, 0.0);
  t.Delta_err.assign(size, 0.0);
  t.delta.assign(size, 0.0);
  t.Lambda.assign(size, 0.0);

  auto nodes = [&](int first, int count) {
    return std::span<const double>(x.data() + first - count + 1, static_cast<std::size_t>(count));
  };
  auto vals = [&](int first, int count) {
    return std::span<const double>(t.fx.data() + first - count + 1, static_cast<std::size_t>(count));
  };

  for (int j = 3; j <= n; ++j) {
    t.Delta[j] = divided_difference(nodes(j, 4), vals(j, 4));
    t.Delta_plus[j] = std::max(t.Delta[j], 0.0);
    t.Delta_err[j] = divided_difference_error(nodes(j, 4), vals(j, 4));
    t.Lambda[j] = (x[j - 3] - x[j]) * t.Delta_plus[j];
  }
  for (int j = 3; j <= n - 1; ++j) t.delta[j] = divided_difference(nodes(j + 1, 5), vals(j + 1, 5));

  for (int j = 4; j <= n - 1; ++j)
    if (!t.strictly_greater(j + 1, j) && t.strictly_greater(j, j - 1)) t.W.push_back(j);

  const double snap = 1e-12 * (p.b() - p.a());
  for (int j : t.W) {
    const std::array<double, 4> xs{x[j], x[j - 1], x[j - 2], x[j - 3]};
    auto [d, H] = three_term_parabola(xs, t.Lambda[j + 1], t.Lambda[j], t.Lambda[j - 1]);
    if (d < x[j - 1] - snap || d > x[j - 2] + snap)
      throw AdmissibilityError("d_j in I_{j-1}", j,
                               "vertex " + std::to_string(d) + " outside [" +
                                   std::to_string(x[j - 1]) + ", " + std::to_string(x[j - 2]) + "]");
    if (d < x[j - 1] || d > x[j - 2]) {
      d = std::clamp(d, x[j - 1], x[j - 2]);
      H = t.Lambda[j + 1] * (d - x[j]) * (d - x[j - 1]) +
          t.Lambda[j] * (d - x[j - 1]) * (d - x[j - 2]) +
          t.Lambda[j - 1] * (d - x[j - 2]) * (d - x[j - 3]);
    }
    t.d[j] = d;
    t.H[j] = H;
    const double balanced =
        (t.Lambda[j + 1] * (x[j - 1] - x[j]) + t.Lambda[j - 1] * (x[j - 3] - x[j - 2])) /
        (x[j - 2] - x[j - 1]);
    t.H_bar[j] = three_term_parabola(xs, t.Lambda[j + 1], balanced, t.Lambda[j - 1]).minimum;
    t.Z.push_back(j - 2);
    t.Z.push_back(j - 1);
  }
  std::sort(t.Z.begin(), t.Z.end());

  for (int j = 3; j <= n - 1; ++j) {
    const auto r = t.role(j);
    if (r == IndexRole::kVPlus) t.Vplus.push_back(j);
    if (r == IndexRole::kVMinus) t.Vminus.push_back(j);
  }
  return t;
}

KnotPlan plan_knots(const ClassificationTable& table, const Partition& p) {
  const int n = p.n();
  if (table.n != n) throw std::invalid_argument("classification table does not match partition");

  // (value, partition index or -(W index) - 1)
  std::vector<std::pair<double, int>> pts;
  for (int j = 0; j <= n; ++j)
    if (!table.in_Z(j)) pts.emplace_back(p.x(j), j);
  for (const auto& [j, d] : table.d) pts.emplace_back(d, -j - 1);
  std::sort(pts.begin(), pts.end(), [](const auto& l, const auto& r) { return l.first > r.first; });

  KnotPlan plan;
  plan.y.reserve(pts.size());
  std::map<int, int> index_of_point;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    plan.y.push_back(pts[i].first);
    if (pts[i].second >= 0)
      index_of_point[pts[i].second] = static_cast<int>(i);
    else
      plan.i_star[-pts[i].second - 1] = static_cast<int>(i);
  }
  for (int j : table.Vplus) plan.i_of[j] = index_of_point.at(j - 1);
  for (int j : table.Vminus) plan.i_of[j] = index_of_point.at(j - 1);

  const int k = plan.k();
  plan.count_bound_ok = (n - n / 3 - 1 <= k) && (k <= n);

  // gap bound against the partition intervals adjacent to y_i
  const double tol = 1e-12 * (p.b() - p.a());
  for (int i = 1; i <= k; ++i) {
    const double gap = plan.y[i - 1] - plan.y[i];
    std::vector<int> near;
    if (pts[i].second >= 0) {
      const int m = pts[i].second;
      if (m >= 1) near.push_back(m);
      if (m + 1 <= n) near.push_back(m + 1);
    } else {
      near.push_back(-pts[i].second - 1 - 1);  // d_j lies in I_{j-1}
    }
    const bool ok = std::any_of(near.begin(), near.end(), [&](int m) {
      return gap >= p.h(m) - tol && gap < 4 * p.h(m);
    });
    if (!ok)
      throw AdmissibilityError("knot gap", i,
                               "y_{i-1} - y_i = " + std::to_string(gap) +
                                   " outside [h, 4h) of the nearest partition interval");
  }
  return plan;
}

nlohmann::json to_json(const ClassificationTable& t) {
  auto slice = [&](const std::vector<double>& v, int from, int to) {
    return std::vector<double>(v.begin() + from, v.begin() + to + 1);
  };
  auto as_object = [](const std::map<int, double>& m) {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& [j, v] : m) o[std::to_string(j)] = v;
    return o;
  };
  return {{"n", t.n},
          {"Delta", {{"first_j", 3}, {"values", slice(t.Delta, 3, t.n)}}},
          {"delta", {{"first_j", 3}, {"values", slice(t.delta, 3, t.n - 1)}}},
          {"Lambda", {{"first_j", 3}, {"values", slice(t.Lambda, 3, t.n)}}},
          {"W", t.W},
          {"Z", t.Z},
          {"Vplus", t.Vplus},
          {"Vminus", t.Vminus},
          {"d", as_object(t.d)},
          {"H", as_object(t.H)},
          {"H_bar", as_object(t.H_bar)}};
}

nlohmann::json to_json(const KnotPlan& plan) {
  auto as_object = [](const std::map<int, int>& m) {
    nlohmann::json o = nlohmann::json::object();
    for (const auto& [j, i] : m) o[std::to_string(j)] = i;
    return o;
  };
  return {{"k", plan.k()},
          {"y_descending", plan.y},
          {"i_of", as_object(plan.i_of)},
          {"i_star", as_object(plan.i_star)},
          {"count_bound_ok", plan.count_bound_ok}};
}

}  // namespace tmspline
