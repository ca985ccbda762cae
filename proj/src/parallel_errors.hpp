#pragma once

#include <exception>

namespace tmspline {

// Collects the first exception thrown inside an OpenMP loop body so it can be
// rethrown after the region; exceptions must not cross the region boundary.
class ParallelErrors {
 public:
  template <class Body>
  void run(Body&& body) noexcept {
    try {
      body();
    } catch (...) {
#ifdef TMSPLINE_HAVE_OPENMP
#pragma omp critical(tmspline_parallel_errors)
#endif
      if (!first_) first_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (first_) std::rethrow_exception(first_);
  }

 private:
  std::exception_ptr first_;
};

}  // namespace tmspline
