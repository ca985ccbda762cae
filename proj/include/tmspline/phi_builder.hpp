#pragma once

#include "tmspline/trunc_spline.hpp"

namespace tmspline {

/// Coefficients of the C^1 cubic spline
///   phi(x) = alpha (x-a)_+^3 + beta (x-c)_+^3 + gamma (x-c)_+^2 + (1-alpha-beta) (x-b)_+^3
/// that vanishes left of a and reproduces the kink function
/// (x - x_j)(x - x_{j-1})(x - x_{j-2}) right of b.
struct PhiCoefficients {
  double alpha = 0, beta = 0, gamma = 0;
  double hat_h1 = 0, hat_h2 = 0;                   // c - a, b - c
  double tilde_h1 = 0, tilde_h2 = 0, tilde_h3 = 0;  // elementary symmetric functions of b - x_m
};

/// Requires a < c < b and xj < xjm1 < xjm2.
PhiCoefficients phi_coefficients(double a, double c, double b, double xj, double xjm1, double xjm2);

/// phi on the domain [lo, hi]; a, c, b must lie in the domain.
TruncatedPowerSpline build_phi(const PhiCoefficients& coeffs, double a, double c, double b,
                               double lo, double hi);

/// sup over grid+1 uniform points of |psi - phi| on [from, to].
double phi_deviation(const TruncatedPowerSpline& phi, const TruncatedPowerSpline& psi, double from,
                     double to, int grid);

}  // namespace tmspline
