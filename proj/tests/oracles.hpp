#pragma once
// Independent reference computations for the unit and acceptance tests.
// Nothing here calls into the library.

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

// Neville table of interpolating polynomials; the leading coefficient of the
// degree-k interpolant is recovered from the table of leading coefficients
// that the same recursion carries alongside the values.
inline long double neville_leading(const std::vector<double>& t, const std::vector<double>& v) {
  const std::size_t k = t.size();
  // lead[i] holds the leading coefficient of the polynomial through t[i..i+m]
  std::vector<long double> lead(v.begin(), v.end());
  for (std::size_t m = 1; m < k; ++m)
    for (std::size_t i = 0; i + m < k; ++i)
      lead[i] = (lead[i + 1] - lead[i]) / (static_cast<long double>(t[i + m]) - t[i]);
  return lead[0];
}

// Aitken-Neville evaluation at x.
inline long double neville_eval(const std::vector<double>& t, const std::vector<double>& v,
                                double x) {
  std::vector<long double> p(v.begin(), v.end());
  const std::size_t k = t.size();
  for (std::size_t m = 1; m < k; ++m)
    for (std::size_t i = 0; i + m < k; ++i)
      p[i] = ((x - static_cast<long double>(t[i + m])) * p[i] +
              (static_cast<long double>(t[i]) - x) * p[i + 1]) /
             (static_cast<long double>(t[i]) - t[i + m]);
  return p[0];
}

// sum_i v_i / prod_{m != i} (t_i - t_m)
inline long double symmetric_dd(const std::vector<double>& t, const std::vector<double>& v) {
  long double s = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    long double w = 1;
    for (std::size_t m = 0; m < t.size(); ++m)
      if (m != i) w *= static_cast<long double>(t[i]) - t[m];
    s += v[i] / w;
  }
  return s;
}

inline double psi3_product(double x, double xj, double xjm1, double xjm2) {
  return x > xj ? (x - xj) * (x - xjm1) * (x - xjm2) : 0.0;
}

// Solve A y = r for 3x3 with partial pivoting.
inline std::array<long double, 3> solve3(std::array<std::array<long double, 3>, 3> A,
                                         std::array<long double, 3> r) {
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int i = c + 1; i < 3; ++i)
      if (std::fabs(A[i][c]) > std::fabs(A[piv][c])) piv = i;
    std::swap(A[c], A[piv]);
    std::swap(r[c], r[piv]);
    for (int i = c + 1; i < 3; ++i) {
      const long double f = A[i][c] / A[c][c];
      for (int m = c; m < 3; ++m) A[i][m] -= f * A[c][m];
      r[i] -= f * r[c];
    }
  }
  std::array<long double, 3> y{};
  for (int i = 2; i >= 0; --i) {
    long double s = r[i];
    for (int m = i + 1; m < 3; ++m) s -= A[i][m] * y[m];
    y[i] = s / A[i][i];
  }
  return y;
}

// alpha, beta, gamma from matching the x^2, x^1, x^0 coefficients of
// alpha (x-a)^3 + beta (x-c)^3 + gamma (x-c)^2 + (1-alpha-beta)(x-b)^3
// against (x - x0)(x - x1)(x - x2).
inline std::array<long double, 3> phi_by_matching(double a, double c, double b, double x0,
                                                  double x1, double x2) {
  const long double A = a, C = c, B = b;
  const long double e1 = (long double)x0 + x1 + x2;
  const long double e2 = (long double)x0 * x1 + (long double)x0 * x2 + (long double)x1 * x2;
  const long double e3 = (long double)x0 * x1 * x2;
  std::array<std::array<long double, 3>, 3> M{{
      {-3 * A + 3 * B, -3 * C + 3 * B, 1},
      {3 * A * A - 3 * B * B, 3 * C * C - 3 * B * B, -2 * C},
      {-A * A * A + B * B * B, -C * C * C + B * B * B, C * C},
  }};
  std::array<long double, 3> r{-e1 + 3 * B, e2 - 3 * B * B, -e3 + B * B * B};
  return solve3(M, r);
}

// central difference of g at x with step e
inline double central_diff(const std::function<double(double)>& g, double x, double e) {
  return (g(x + e) - g(x - e)) / (2 * e);
}

// one-sided differences (second order accurate)
inline double right_diff(const std::function<double(double)>& g, double x, double e) {
  return (-3 * g(x) + 4 * g(x + e) - g(x + 2 * e)) / (2 * e);
}
inline double left_diff(const std::function<double(double)>& g, double x, double e) {
  return (3 * g(x) - 4 * g(x - e) + g(x - 2 * e)) / (2 * e);
}

// fourth forward difference written out
inline long double fourth_difference(const std::function<double(double)>& g, double x, double u) {
  return (long double)g(x + 4 * u) - 4.0L * g(x + 3 * u) + 6.0L * g(x + 2 * u) -
         4.0L * g(x + u) + g(x);
}

// dense-grid sup of |g|
inline double grid_sup(const std::function<double(double)>& g, double lo, double hi, int m) {
  double s = 0;
  for (int i = 0; i <= m; ++i) s = std::max(s, std::fabs(g(lo + (hi - lo) * i / m)));
  return s;
}

inline std::vector<double> random_points(std::mt19937_64& rng, double lo, double hi, int count) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> p(count);
  for (auto& v : p) v = u(rng);
  return p;
}

}  // namespace oracle
