#include "tmspline/s3_builder.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "tmspline/divdiff.hpp"
#include "tmspline/io.hpp"
#include "tmspline/verify.hpp"
#include "parallel_errors.hpp"

namespace tmspline {

S3Spline build_s3(const RealFunction& f, const Partition& p) {
  const int n = p.n();
  if (n < 3) throw std::invalid_argument("S3 needs n >= 3");
  const auto& x = p.descending();
  std::vector<double> fx(x.size());
  for (int j = 0; j <= n; ++j) fx[j] = f(x[j]);

  // nodes x_first, x_{first-1}, ..., x_{first-count+1}
  auto window = [&](int first, int count) {
    return std::span<const double>(x.data() + first - count + 1, static_cast<std::size_t>(count));
  };
  auto values = [&](int first, int count) {
    return std::span<const double>(fx.data() + first - count + 1, static_cast<std::size_t>(count));
  };

  // piecewise form: [x_j, x_{j-1}] for j = n..4, then [x_3, b]
  std::vector<double> bp;
  std::vector<CubicCoefs> pieces;
  for (int j = n; j >= 4; --j) {
    bp.push_back(x[j]);
    pieces.push_back(interpolating_cubic(window(j, 4), values(j, 4), x[j]));
  }
  bp.push_back(x[3]);
  pieces.push_back(interpolating_cubic(window(3, 4), values(3, 4), x[3]));
  bp.push_back(x[0]);

  TruncatedPowerSpline form6(p.a(), p.b());
  form6.add_polynomial(interpolating_cubic(window(n, 4), values(n, 4), 0.0));
  for (int j = 3; j <= n - 1; ++j) {
    const double delta = divided_difference(window(j + 1, 5), values(j + 1, 5));
    form6.add_psi({x[j], x[j - 1], x[j - 2]}, delta * (x[j - 3] - x[j + 1]));
  }

  TruncatedPowerSpline form7(p.a(), p.b());
  form7.add_polynomial(interpolating_cubic(window(n, 3), values(n, 3), 0.0));
  for (int j = 3; j <= n; ++j) {
    const double Delta = divided_difference(window(j, 4), values(j, 4));
    form7.add_psi({x[j], x[j - 1], x[j - 2]}, Delta);
    if (j - 1 >= 3) form7.add_psi({x[j - 1], x[j - 2], x[j - 3]}, -Delta);  // Psi_3(., x_2) == 0
  }

  return {PiecewisePoly(std::move(bp), std::move(pieces)), std::move(form6), std::move(form7)};
}

std::vector<IntervalError> s3_error_report(const RealFunction& f, const Partition& p, int grid) {
  if (grid < 32) throw std::invalid_argument("s3_error_report needs grid >= 32 per interval");
  const auto s3 = build_s3(f, p);
  const int n = p.n();
  std::vector<IntervalError> rows(static_cast<std::size_t>(n));
  // rounding floor from max |f(x_j)| over the whole partition
  double fmax = 0;
  for (double x : p.descending()) fmax = std::max(fmax, std::abs(f(x)));
  const double floor = noise_floor(fmax);
  ParallelErrors errors;
#ifdef TMSPLINE_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int j = 1; j <= n; ++j) errors.run([&] {
    IntervalError& r = rows[j - 1];
    r.j = j;
    r.xj = p.x(j);
    const RealFunction diff = [&](double t) { return f(t) - s3.piecewise(t); };
    r.sup_error = sup_abs_serial(diff, p.x(j), p.x(j - 1), grid);
    r.omega4 = modulus_serial(f, 4, p.h(j), p.x(j), p.clamp(j - 3)).value;
    r.ratio = ratio_above_floor(r.sup_error, r.omega4, floor);
  });
  errors.rethrow();
  return rows;
}

void write_error_csv(std::ostream& os, const std::vector<IntervalError>& rows) {
  os << "j,x_j,sup_error,omega4,ratio\n";
  for (const auto& r : rows)
    os << r.j << ',' << format_double(r.xj) << ',' << format_double(r.sup_error) << ','
       << format_double(r.omega4) << ',' << format_double(r.ratio) << '\n';
}

}  // namespace tmspline
