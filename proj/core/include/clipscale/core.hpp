#ifndef CLIPSCALE_CORE_HPP
#define CLIPSCALE_CORE_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace clipscale {

// Closed box [lower, upper] shared by all coordinates of the data domain.
// Construction rejects non-finite or degenerate (lower >= upper) bounds.
class DomainBounds {
 public:
  DomainBounds(double lower, double upper);

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

// One solvable rescaling problem: find eta >= 0 such that
//   || clip(x + eta * delta) - x ||_p == eps.
//
// Construction enforces the contract the closed-form solution relies on:
// x inside the box (exact comparison), delta not identically zero, all
// entries finite, eps >= 0, and 1 <= p < infinity. Instances are immutable
// values and safe to share across threads.
class ProblemInstance {
 public:
  ProblemInstance(std::vector<double> x, std::vector<double> delta, double eps,
                  double p, DomainBounds bounds);

  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& delta() const noexcept { return delta_; }
  double eps() const noexcept { return eps_; }
  double p() const noexcept { return p_; }
  const DomainBounds& bounds() const noexcept { return bounds_; }
  std::size_t size() const noexcept { return x_.size(); }

  // Copy with a different target norm; revalidates only eps.
  ProblemInstance with_eps(double eps) const;

 private:
  std::vector<double> x_;
  std::vector<double> delta_;
  double eps_;
  double p_;
  DomainBounds bounds_;
};

// Solved scale together with the quantities downstream consumers need.
// active_mass is the slope of the inversion segment (sum of |delta_i|^p over
// the coordinates still unsaturated there); it is meaningful for eps > 0.
struct EtaSolution {
  double eta = 0.0;
  double achieved_norm = 0.0;
  std::size_t saturated_count = 0;
  double active_mass = 0.0;
};

// Element-wise projection onto [lower, upper].
std::vector<double> clip(std::span<const double> v, const DomainBounds& bounds);

// || clip(x + eta * delta) - x ||_p evaluated through the saturation
// rewrite: (sum over delta_i != 0 of min{|delta_i|^p eta^p, |c_i - x_i|^p})^(1/p)
// with c_i the box face delta_i points at. Agrees with the literal
// clip-then-norm evaluation to floating-point accuracy and is non-decreasing
// in eta.
double effective_norm(const ProblemInstance& inst, double eta);

// eps / ||delta||_p, the solution when nothing clips. Lower bound for the
// clipped solution.
double unconstrained_eta(const ProblemInstance& inst);

// Supremum of effective_norm over eta: every coordinate at its face.
double max_effective_norm(const ProblemInstance& inst);

}  // namespace clipscale

#endif  // CLIPSCALE_CORE_HPP
