#include "tmspline/divdiff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tmspline/verify.hpp"

namespace tmspline {
namespace {

void check_nodes(std::span<const double> nodes, std::span<const double> values) {
  if (nodes.empty()) throw std::invalid_argument("divided difference needs at least one node");
  if (nodes.size() != values.size())
    throw std::invalid_argument("node and value arrays differ in length");
  const auto [lo, hi] = std::minmax_element(nodes.begin(), nodes.end());
  const double guard = 1e-13 * (*hi - *lo);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t k = i + 1; k < nodes.size(); ++k)
      if (!(std::abs(nodes[i] - nodes[k]) > guard))
        throw std::invalid_argument("divided difference nodes are not distinct");
}

// Newton coefficients [t_0; g], [t_0,t_1; g], ... by the in-place table.
std::vector<double> newton_coefficients(std::span<const double> t, std::span<const double> v) {
  std::vector<double> c(v.begin(), v.end());
  const std::size_t m = t.size();
  for (std::size_t k = 1; k < m; ++k)
    for (std::size_t i = m - 1; i >= k; --i) c[i] = (c[i] - c[i - 1]) / (t[i] - t[i - k]);
  return c;
}

}  // namespace

NodeValueSet NodeValueSet::sample(const RealFunction& g, std::span<const double> nodes) {
  NodeValueSet nv{{nodes.begin(), nodes.end()}, {}};
  nv.values.reserve(nodes.size());
  for (double t : nodes) nv.values.push_back(g(t));
  return nv;
}

double divided_difference(std::span<const double> nodes, std::span<const double> values) {
  check_nodes(nodes, values);
  return newton_coefficients(nodes, values).back();
}

double divided_difference(const NodeValueSet& nv) { return divided_difference(nv.nodes, nv.values); }

double lagrange_eval(std::span<const double> nodes, std::span<const double> values, double x) {
  check_nodes(nodes, values);
  const auto c = newton_coefficients(nodes, values);
  double p = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) p = p * (x - nodes[i]) + c[i];
  return p;
}

double lagrange_eval(const NodeValueSet& nv, double x) { return lagrange_eval(nv.nodes, nv.values, x); }

std::array<double, 4> interpolating_cubic(std::span<const double> nodes,
                                          std::span<const double> values, double origin) {
  if (nodes.size() > 4) throw std::invalid_argument("interpolating_cubic takes at most 4 nodes");
  check_nodes(nodes, values);
  const auto c = newton_coefficients(nodes, values);
  // Horner on polynomials: p <- p * (u + origin - t_i) + c_i
  std::array<double, 4> p{};
  p[0] = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    const double s = origin - nodes[i];
    std::array<double, 4> q{};
    for (int d = 0; d < 4; ++d) {
      q[d] += p[d] * s;
      if (d + 1 < 4) q[d + 1] += p[d];
    }
    q[0] += c[i];
    p = q;
  }
  return p;
}

double whitney_defect(const RealFunction& g, double a, double b, int grid) {
  if (!(a < b)) throw std::invalid_argument("whitney_defect needs a < b");
  if (grid < 16) throw std::invalid_argument("whitney_defect needs grid >= 16");
  const std::array<double, 4> t{a, a + (b - a) / 3, b - (b - a) / 3, b};
  const auto nv = NodeValueSet::sample(g, t);
  const auto c = interpolating_cubic(nv.nodes, nv.values, a);
  const RealFunction diff = [&](double x) {
    const double u = x - a;
    return g(x) - (((c[3] * u + c[2]) * u + c[1]) * u + c[0]);
  };
  const double err = sup_abs(diff, a, b, grid);
  return err - modulus(g, 4, (b - a) / 4, a, b).value;
}

}  // namespace tmspline
