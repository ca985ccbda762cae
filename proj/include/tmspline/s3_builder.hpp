#pragma once

#include <iosfwd>
#include <vector>

#include "tmspline/common.hpp"
#include "tmspline/partition.hpp"
#include "tmspline/trunc_spline.hpp"

namespace tmspline {

/// The continuous piecewise-Lagrange cubic interpolating f at the partition,
/// kept in three equivalent forms:
///   piecewise  one cubic per interval through x_j..x_{j-3} (one shared cubic
///              through x_3..x_0 on [x_3, b]);
///   form6      L_3(x; x_n) + sum_{j=3}^{n-1} delta_j (x_{j-3} - x_{j+1}) Psi_3(x, x_j);
///   form7      L_2(x; x_n) + sum_{j=3}^{n} Delta_j (Psi_3(x, x_j) - Psi_3(x, x_{j-1})).
struct S3Spline {
  PiecewisePoly piecewise;
  TruncatedPowerSpline form6;
  TruncatedPowerSpline form7;
};

/// Requires n >= 3.
S3Spline build_s3(const RealFunction& f, const Partition& p);

struct IntervalError {
  int j = 0;
  double xj = 0;
  double sup_error = 0;
  double omega4 = 0;  // omega_4(f, h_j, [x_j, x_{j-3}]) with x_{-1} = x_{-2} = b
  double ratio = 0;   // both sides below the rounding floor of max |f(x_m)| give 0
};

/// Per-interval sup |f - S3| on I_j (grid points per interval, >= 32) against
/// the local fourth modulus. Intervals are processed in parallel; the result
/// is ordered by j = 1..n.
std::vector<IntervalError> s3_error_report(const RealFunction& f, const Partition& p, int grid);

/// CSV with header j,x_j,sup_error,omega4,ratio.
void write_error_csv(std::ostream& os, const std::vector<IntervalError>& rows);

}  // namespace tmspline
