#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace tmspline {

/// A real function of one real variable. Implementations must be safe to
/// call concurrently (the grid kernels evaluate from several threads).
using RealFunction = std::function<double(double)>;

/// Thrown when an evaluation is requested outside the domain of a function
/// or spline (division by zero, x outside [a,b], non-finite result).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a partition fails one of the admissibility conditions of the
/// construction. `condition()` names the violated check, `index()` the
/// partition index j it was detected at (or -1 when not index-specific).
class AdmissibilityError : public std::runtime_error {
 public:
  AdmissibilityError(std::string condition, int index, const std::string& detail)
      : std::runtime_error("admissibility violation [" + condition + "] at j=" +
                           std::to_string(index) + ": " + detail),
        condition_(std::move(condition)),
        index_(index) {}

  const std::string& condition() const noexcept { return condition_; }
  int index() const noexcept { return index_; }

 private:
  std::string condition_;
  int index_;
};

}  // namespace tmspline
