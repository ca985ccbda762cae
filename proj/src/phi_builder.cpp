#include "tmspline/phi_builder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tmspline {

PhiCoefficients phi_coefficients(double a, double c, double b, double xj, double xjm1, double xjm2) {
  if (!(a < c && c < b)) throw std::invalid_argument("phi knots must satisfy a < c < b");
  if (!(xj < xjm1 && xjm1 < xjm2))
    throw std::invalid_argument("phi nodes must satisfy x_j < x_{j-1} < x_{j-2}");

  PhiCoefficients k;
  k.hat_h1 = c - a;
  k.hat_h2 = b - c;
  const double r0 = b - xj, r1 = b - xjm1, r2 = b - xjm2;
  k.tilde_h1 = r0 + r1 + r2;
  k.tilde_h2 = r0 * r1 + r0 * r2 + r1 * r2;
  k.tilde_h3 = r0 * r1 * r2;

  const double h1 = k.hat_h1, h2 = k.hat_h2;
  const double t1 = k.tilde_h1, t2 = k.tilde_h2, t3 = k.tilde_h3;
  k.alpha = (t1 * h2 * h2 - 2 * t2 * h2 + 3 * t3) / (3 * h1 * h1 * (h1 + h2));
  // the printed denominator carries a stray ')'; it is 3 h1^2 h2^2
  k.beta = (t1 * h2 * (h1 + h2) * (2 * h1 - h2) - t2 * (h1 * h1 - 2 * h2 * h2 + 2 * h1 * h2) -
            3 * t3 * (h2 - h1)) /
           (3 * h1 * h1 * h2 * h2);
  k.gamma = t1 - 3 * k.alpha * (h1 + h2) - 3 * k.beta * h2;
  return k;
}

TruncatedPowerSpline build_phi(const PhiCoefficients& k, double a, double c, double b, double lo,
                               double hi) {
  TruncatedPowerSpline s(lo, hi);
  s.add_term(a, 3, k.alpha);
  s.add_term(c, 3, k.beta);
  s.add_term(c, 2, k.gamma);
  s.add_term(b, 3, 1 - k.alpha - k.beta);
  return s;
}

double phi_deviation(const TruncatedPowerSpline& phi, const TruncatedPowerSpline& psi, double from,
                     double to, int grid) {
  if (grid < 64) throw std::invalid_argument("phi_deviation needs grid >= 64");
  if (!(from < to)) throw std::invalid_argument("phi_deviation needs from < to");
  double best = 0;
  for (int i = 0; i <= grid; ++i) {
    const double x = (i == grid) ? to : from + (to - from) * i / grid;
    best = std::max(best, std::abs(psi(x) - phi(x)));
  }
  return best;
}

}  // namespace tmspline
