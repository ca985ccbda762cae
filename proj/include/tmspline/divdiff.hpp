#pragma once

#include <array>
#include <span>
#include <vector>

#include "tmspline/common.hpp"

namespace tmspline {

/// Nodes and the sampled values of some function at them.
struct NodeValueSet {
  std::vector<double> nodes;
  std::vector<double> values;

  static NodeValueSet sample(const RealFunction& g, std::span<const double> nodes);
};

/// [t_0, ..., t_k; g] computed with the recursive divided-difference table.
/// Nodes need not be sorted but must be pairwise distinct (min separation
/// 1e-13 of their spread); confluent differences are not supported.
double divided_difference(std::span<const double> nodes, std::span<const double> values);
double divided_difference(const NodeValueSet& nv);

/// Value at x of the polynomial of degree < nodes.size() interpolating the data.
double lagrange_eval(std::span<const double> nodes, std::span<const double> values, double x);
double lagrange_eval(const NodeValueSet& nv, double x);

/// Power-basis coefficients c[0] + c[1] u + ... of the interpolating
/// polynomial (at most 4 nodes) in the shifted variable u = x - origin.
std::array<double, 4> interpolating_cubic(std::span<const double> nodes,
                                          std::span<const double> values, double origin);

/// max_grid |g - l3| - omega_4(g, (b-a)/4, [a,b]), where l3 interpolates g at
/// a, a+(b-a)/3, b-(b-a)/3, b. A nonpositive result certifies the Whitney
/// inequality on the grid.
double whitney_defect(const RealFunction& g, double a, double b, int grid);

}  // namespace tmspline
