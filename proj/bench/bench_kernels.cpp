// Wall-clock comparison of the OpenMP grid kernels with their serial references.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef TMSPLINE_HAVE_OPENMP
#include <omp.h>
#endif

#include "tmspline/mono_builder.hpp"
#include "tmspline/verify.hpp"

using namespace tmspline;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double best_of(int reps, F&& body) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    body();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  %s\n", name, serial, parallel,
              serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
#ifdef TMSPLINE_HAVE_OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP: both columns run serially\n");
#endif
  const RealFunction f = [](double x) { return std::exp(x) * std::sin(3 * x) + x * std::abs(x); };
  int mismatches = 0;

  {
    double a = 0, b = 0;
    const double ts = best_of(reps, [&] { a = modulus_serial(f, 4, 0.1, -1, 1, 256, 4096).value; });
    const double tp = best_of(reps, [&] { b = modulus(f, 4, 0.1, -1, 1, 256, 4096).value; });
    row("modulus k=4 256x4096", ts, tp, a == b);
    mismatches += a != b;
  }
  {
    double a = 0, b = 0;
    const double ts = best_of(reps, [&] { a = sup_abs_serial(f, -1, 1, 4'000'000); });
    const double tp = best_of(reps, [&] { b = sup_abs(f, -1, 1, 4'000'000); });
    row("sup_abs 4e6 points", ts, tp, a == b);
    mismatches += a != b;
  }
  {
    const RealFunction g = [](double x) { return std::exp(x); };
    const auto p = Partition::equidistant(-1, 1, 64);
    const auto s = build_spline(g, p);
    const RealFunction diff = [&](double x) { return g(x) - s(x); };
    double a = 0, b = 0;
    const double ts = best_of(reps, [&] { a = sup_abs_serial(diff, -1, 1, 1'000'000); });
    const double tp = best_of(reps, [&] { b = sup_abs(diff, -1, 1, 1'000'000); });
    row("spline error 1e6 points", ts, tp, a == b);
    mismatches += a != b;
  }
  return mismatches == 0 ? 0 : 1;
}
