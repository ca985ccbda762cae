#include "tmspline/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#ifdef TMSPLINE_HAVE_OPENMP
#include <omp.h>
#endif

#include "tmspline/divdiff.hpp"
#include "parallel_errors.hpp"

namespace tmspline {
namespace {

struct ModulusGrid {
  double t_eff;
  int steps, shifts;
};

ModulusGrid modulus_grid(int k, double t, double lo, double hi, int steps, int shifts) {
  if (k < 1) throw std::invalid_argument("modulus order k must be >= 1");
  if (!(t >= 0)) throw std::invalid_argument("modulus step bound t must be >= 0");
  if (!(lo < hi)) throw std::invalid_argument("modulus interval must be nondegenerate");
  if (steps < 1 || shifts < 2) throw std::invalid_argument("modulus grid too small");
  return {std::min(t, (hi - lo) / k), steps, shifts};
}

// max over the shift grid for step index m
double modulus_row(const RealFunction& f, int k, double lo, double hi, const ModulusGrid& g, int m) {
  const double u = g.t_eff * m / g.steps;
  const double span = std::max(0.0, (hi - lo) - k * u);
  double best = 0;
  for (int i = 0; i < g.shifts; ++i) {
    const double x = lo + span * i / (g.shifts - 1);
    best = std::max(best, std::abs(forward_difference(f, k, x, u, hi)));
  }
  return best;
}

ModulusEstimate make_estimate(int k, double t, double lo, double hi, const ModulusGrid& g, double v) {
  return {k, t, lo, hi, v, g.steps, g.shifts};
}

}  // namespace

double forward_difference(const RealFunction& f, int k, double x, double u, double hi) {
  double binom = 1;  // C(k, i)
  double sum = 0;
  for (int i = 0; i <= k; ++i) {
    const double sign = ((k - i) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binom * f(std::min(x + i * u, hi));
    binom = binom * (k - i) / (i + 1);
  }
  return sum;
}

ModulusEstimate modulus_serial(const RealFunction& f, int k, double t, double lo, double hi,
                               int steps, int shifts) {
  const auto g = modulus_grid(k, t, lo, hi, steps, shifts);
  double best = 0;
  if (g.t_eff > 0)
    for (int m = 1; m <= g.steps; ++m) best = std::max(best, modulus_row(f, k, lo, hi, g, m));
  return make_estimate(k, t, lo, hi, g, best);
}

ModulusEstimate modulus(const RealFunction& f, int k, double t, double lo, double hi, int steps,
                        int shifts) {
  const auto g = modulus_grid(k, t, lo, hi, steps, shifts);
  double best = 0;
  if (g.t_eff > 0) {
    ParallelErrors errors;
#ifdef TMSPLINE_HAVE_OPENMP
#pragma omp parallel for reduction(max : best) schedule(static)
#endif
    for (int m = 1; m <= g.steps; ++m) {
      double row = 0;
      errors.run([&] { row = modulus_row(f, k, lo, hi, g, m); });
      best = std::max(best, row);
    }
    errors.rethrow();
  }
  return make_estimate(k, t, lo, hi, g, best);
}

double noise_floor(double fmax) {
  return 256 * std::numeric_limits<double>::epsilon() * std::abs(fmax);
}

double ratio_above_floor(double num, double den, double floor) {
  if (num <= floor) num = 0;
  if (den <= floor) den = 0;
  if (den == 0) return num == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

double sup_abs_serial(const RealFunction& g, double lo, double hi, int samples) {
  if (samples < 1) throw std::invalid_argument("sup_abs needs samples >= 1");
  double best = 0;
  for (int i = 0; i <= samples; ++i) {
    const double x = (i == samples) ? hi : lo + (hi - lo) * i / samples;
    best = std::max(best, std::abs(g(x)));
  }
  return best;
}

double sup_abs(const RealFunction& g, double lo, double hi, int samples) {
  if (samples < 1) throw std::invalid_argument("sup_abs needs samples >= 1");
  double best = 0;
  ParallelErrors errors;
#ifdef TMSPLINE_HAVE_OPENMP
#pragma omp parallel for reduction(max : best) schedule(static)
#endif
  for (int i = 0; i <= samples; ++i) {
    const double x = (i == samples) ? hi : lo + (hi - lo) * i / samples;
    double v = 0;
    errors.run([&] { v = std::abs(g(x)); });
    best = std::max(best, v);
  }
  errors.rethrow();
  return best;
}

MonotonicityReport check_3monotone_spline(const TruncatedPowerSpline& s, double tol) {
  const auto pp = to_piecewise(s);
  const auto d1 = pp.derivative(1);
  const auto d2 = pp.derivative(2);
  const auto& bp = pp.breakpoints();

  MonotonicityReport r;
  r.tol = tol;
  double scale2 = 1, scale1 = 1;
  for (double y : bp) {
    scale2 = std::max({scale2, std::abs(d2.left_limit(y)), std::abs(d2.right_limit(y))});
    scale1 = std::max({scale1, std::abs(d1.left_limit(y)), std::abs(d1.right_limit(y))});
  }
  r.scale = scale2;

  bool first_jump = true;
  for (std::size_t i = 1; i + 1 < bp.size(); ++i) {
    const double left = d2.left_limit(bp[i]), right = d2.right_limit(bp[i]);
    if (first_jump || right - left < r.worst_jump.right - r.worst_jump.left) {
      r.worst_jump = {bp[i], left, right};
      first_jump = false;
    }
    r.worst_c1_gap = std::max(r.worst_c1_gap,
                              std::abs(d1.right_limit(bp[i]) - d1.left_limit(bp[i])) / scale1);
  }
  for (std::size_t i = 0; i < d2.size(); ++i) {
    const double slope = d2.pieces()[i][1];
    if (i == 0 || slope < r.worst_slope.slope) r.worst_slope = {bp[i], bp[i + 1], slope};
  }

  const double bound = tol * scale2;
  const bool jumps_ok = first_jump || r.worst_jump.right - r.worst_jump.left >= -bound;
  const bool slopes_ok = r.worst_slope.slope >= -bound;
  const bool c1_ok = r.worst_c1_gap <= tol;
  r.pass = jumps_ok && slopes_ok && c1_ok;
  return r;
}

bool check_function_3monotone(const RealFunction& f, double lo, double hi, int samples,
                              std::uint64_t seed, double tol) {
  if (samples < 4) throw std::invalid_argument("check_function_3monotone needs samples >= 4");
  if (!(lo < hi)) throw std::invalid_argument("check_function_3monotone needs lo < hi");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pick(lo, hi);
  const double min_gap = 1e-3 * (hi - lo);

  // the endpoints-and-thirds quadruple is always included
  std::array<double, 4> t{lo, lo + (hi - lo) / 3, hi - (hi - lo) / 3, hi};
  for (int trial = 0; trial < samples; ++trial) {
    if (trial > 0) {
      for (bool ok = false; !ok;) {
        for (auto& v : t) v = pick(rng);
        std::sort(t.begin(), t.end());
        ok = t[1] - t[0] > min_gap && t[2] - t[1] > min_gap && t[3] - t[2] > min_gap;
      }
    }
    std::array<double, 4> v{};
    double size = 0;
    for (int i = 0; i < 4; ++i) {
      v[i] = f(t[i]);
      double w = 1;
      for (int m = 0; m < 4; ++m)
        if (m != i) w *= t[i] - t[m];
      size += std::abs(v[i] / w);
    }
    if (divided_difference(t, v) < -tol * std::max(size, 1e-300)) return false;
  }
  return true;
}

Lemma1Result lemma1_check(const RealFunction& f, const std::array<double, 6>& x, double rel_tol) {
  for (int i = 0; i < 5; ++i)
    if (!(x[i] > x[i + 1])) throw std::invalid_argument("lemma1_check needs x_5 < ... < x_0");
  std::array<double, 6> v{};
  for (int i = 0; i < 6; ++i) v[i] = f(x[i]);
  auto dd4 = [&](int first) {
    return divided_difference(std::span<const double>(x.data() + first, 4),
                              std::span<const double>(v.data() + first, 4));
  };
  // 64 ulps of the terms summed by the difference
  auto dd4_err = [&](int first) {
    double size = 0;
    for (int i = first; i < first + 4; ++i) {
      double w = 1;
      for (int m = first; m < first + 4; ++m)
        if (m != i) w *= x[i] - x[m];
      size += std::abs(v[i] / w);
    }
    return 64 * std::numeric_limits<double>::epsilon() * size;
  };

  Lemma1Result r;
  r.delta5 = dd4(2);  // [x5, x4, x3, x2]
  r.delta4 = dd4(1);  // [x4, x3, x2, x1]
  r.delta3 = dd4(0);  // [x3, x2, x1, x0]
  const double e5 = dd4_err(2), e4 = dd4_err(1), e3 = dd4_err(0);

  const double l4 = (x[1] - x[4]) * (x[2] - x[3]);
  const double a5 = (x[2] - x[5]) * (x[3] - x[4]), a3 = (x[0] - x[3]) * (x[1] - x[2]);
  const double b5 = (x[2] - x[5]) * (x[2] - x[4]), b3 = (x[0] - x[3]) * (x[1] - x[3]);
  const double c5 = (x[2] - x[5]) * ((x[2] - x[4]) + (x[2] - x[3]));
  const double d3 = (x[0] - x[3]) * ((x[2] - x[3]) + (x[1] - x[3]));

  r.lhs = l4 * r.delta4;
  r.A = a5 * r.delta5 + a3 * r.delta3;
  r.B = std::sqrt(std::max(b5 * r.delta5 * b3 * r.delta3, 0.0));
  r.C = a3 * r.delta3 - c5 * r.delta5;
  r.D = a5 * r.delta5 - d3 * r.delta3;

  // propagated rounding of the three differences
  const double b_hi = std::sqrt(b5 * std::max(r.delta5 + e5, 0.0) * b3 * std::max(r.delta3 + e3, 0.0));
  const double b_lo = std::sqrt(b5 * std::max(r.delta5 - e5, 0.0) * b3 * std::max(r.delta3 - e3, 0.0));
  const double nB = 2 * std::max(b_hi - r.B, r.B - b_lo);
  const double nA = a5 * e5 + a3 * e3;
  const double nCD = std::max(a3 * e3 + c5 * e5, a5 * e5 + d3 * e3);

  const double scale = rel_tol * std::max({std::abs(r.lhs), std::abs(r.A), 2 * r.B, std::abs(r.C),
                                           std::abs(r.D), 1e-300});
  r.upper_slack = r.A + 2 * r.B - r.lhs;
  r.upper_rounding = l4 * e4 + nA + nB;
  r.upper_holds = r.upper_slack >= -(scale + r.upper_rounding);
  if (r.delta5 <= r.delta4 && r.delta4 >= r.delta3) {
    const double cd = std::max(r.C, r.D);
    const double first = r.lhs - cd, second = cd - (r.A - 2 * r.B);
    const double n1 = l4 * e4 + nCD, n2 = nCD + nA + nB;
    r.lower_slack = std::min(first, second);
    r.lower_rounding = std::max(n1, n2);
    r.lower_holds = first >= -(scale + n1) && second >= -(scale + n2);
  }
  return r;
}

}  // namespace tmspline
