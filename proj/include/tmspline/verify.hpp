#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "tmspline/common.hpp"
#include "tmspline/trunc_spline.hpp"

namespace tmspline {

/// Brute-force estimate of the k-th modulus of smoothness
///   omega_k(f, t, [lo,hi]) = sup_{0<u<=t} sup_{x, x+ku in [lo,hi]} |Delta_u^k f(x)|.
struct ModulusEstimate {
  int k = 0;
  double t = 0;
  double lo = 0, hi = 0;
  double value = 0;
  int steps = 0;   // number of u values in (0, t]
  int shifts = 0;  // number of x positions per u
};

inline constexpr int kDefaultModulusSteps = 64;
inline constexpr int kDefaultModulusShifts = 512;

/// k-th forward difference sum_{i} (-1)^{k-i} C(k,i) f(x + i u); arguments are
/// clamped to hi so that rounding never leaves the interval.
double forward_difference(const RealFunction& f, int k, double x, double u, double hi);

/// Grid kernel, parallel over the step grid when OpenMP is available. Steps
/// u_m = m t'/steps with t' = min(t, (hi-lo)/k); shifts are spread uniformly
/// over [lo, hi - k u_m] including both ends.
ModulusEstimate modulus(const RealFunction& f, int k, double t, double lo, double hi,
                        int steps = kDefaultModulusSteps, int shifts = kDefaultModulusShifts);
/// Serial reference of the same grid; bit-identical to modulus().
ModulusEstimate modulus_serial(const RealFunction& f, int k, double t, double lo, double hi,
                               int steps = kDefaultModulusSteps,
                               int shifts = kDefaultModulusShifts);

/// Rounding floor for grid errors and finite differences of a function of
/// magnitude `fmax`: 256 ulps of fmax. Quantities below it are treated as 0
/// when forming error/modulus ratios.
double noise_floor(double fmax);

/// num/den with both sides snapped to 0 below `floor`; 0/0 gives 0 and
/// x/0 with x > 0 gives +inf.
double ratio_above_floor(double num, double den, double floor);

/// max over samples+1 uniform points of |g(x)| on [lo, hi].
double sup_abs(const RealFunction& g, double lo, double hi, int samples);
double sup_abs_serial(const RealFunction& g, double lo, double hi, int samples);

inline constexpr double kDefaultMonotoneTol = 1e-9;

/// Exact second-derivative analysis of a cubic spline.
struct MonotonicityReport {
  bool pass = true;
  double tol = kDefaultMonotoneTol;
  double scale = 1;  // max(1, max |s''| over one-sided knot values)
  struct Jump {
    double knot = 0, left = 0, right = 0;
  } worst_jump;  // s'' jump with the smallest right - left
  struct Slope {
    double lo = 0, hi = 0, slope = 0;
  } worst_slope;            // piece with the smallest s''' value
  double worst_c1_gap = 0;  // largest |s'(y+) - s'(y-)| relative to max(1, |s'|)
};

/// s'' must not jump down at any knot, must be nondecreasing on every piece
/// and s' must be continuous. No sampling is involved.
MonotonicityReport check_3monotone_spline(const TruncatedPowerSpline& s,
                                          double tol = kDefaultMonotoneTol);

/// Randomized necessary-condition screen: third divided differences over
/// `samples` random quadruples in [lo, hi] are >= -tol (relative to the size
/// of the terms of the difference).
bool check_function_3monotone(const RealFunction& f, double lo, double hi, int samples,
                              std::uint64_t seed = 20240611, double tol = 1e-9);

/// Quantities and verdicts of the two divided-difference inequalities for
/// six points x_5 < ... < x_0 (array index i holds x_i).
struct Lemma1Result {
  double delta5 = 0, delta4 = 0, delta3 = 0;
  double lhs = 0;  // (x1-x4)(x2-x3) Delta_4
  double A = 0, B = 0, C = 0, D = 0;
  bool upper_holds = false;          // lhs <= A + 2B
  std::optional<bool> lower_holds;   // lhs >= max{C,D} >= A - 2B, when Delta_5 <= Delta_4 >= Delta_3
  double upper_slack = 0;            // A + 2B - lhs
  std::optional<double> lower_slack; // min(lhs - max{C,D}, max{C,D} - (A - 2B))
  double upper_rounding = 0;         // rounding bound of upper_slack
  double lower_rounding = 0;         // rounding bound of the lower slacks

};

/// A verdict fails only when a slack is below -(rel_tol * magnitude + rounding
/// bound propagated from the three divided differences).
Lemma1Result lemma1_check(const RealFunction& f, const std::array<double, 6>& x,
                          double rel_tol = 1e-9);

}  // namespace tmspline
