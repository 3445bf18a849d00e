#ifndef CLIPSCALE_ERRORS_HPP
#define CLIPSCALE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace clipscale {

// Base class for solve-time failures that callers may want to dispatch on.
class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The perturbation direction has zero p-norm, so no rescaling exists.
class ZeroDeltaError : public SolveError {
 public:
  ZeroDeltaError() : SolveError("perturbation direction is zero") {}
};

// The requested norm exceeds what clipping allows; carries the attainable maximum.
class UnreachableError : public SolveError {
 public:
  explicit UnreachableError(double max_norm)
      : SolveError("target norm exceeds attainable maximum " +
                   std::to_string(max_norm)),
        max_norm_(max_norm) {}

  double max_norm() const noexcept { return max_norm_; }

 private:
  double max_norm_;
};

// Iterative solver ran out of iterations before meeting its tolerance.
class NonConvergenceError : public SolveError {
 public:
  explicit NonConvergenceError(int iterations)
      : SolveError("bisection did not converge within " +
                   std::to_string(iterations) + " iterations") {}
};

// The scale has no two-sided derivative at the requested point.
class DegenerateGradientError : public SolveError {
 public:
  explicit DegenerateGradientError(const std::string& what) : SolveError(what) {}
};

}  // namespace clipscale

#endif  // CLIPSCALE_ERRORS_HPP
