#ifndef CLIPSCALE_SOLVER_HPP
#define CLIPSCALE_SOLVER_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "clipscale/core.hpp"

namespace clipscale {

// Sorted description of f(t) = ||clip(x + t^(1/p) delta) - x||_p^p as a
// piecewise linear, concave function of t = eta^p.
//
// Position k covers the coordinate with the k-th smallest saturation
// threshold. thresholds[k] is that threshold |c_i - x_i|^p / |delta_i|^p,
// slopes[k] is the suffix sum of |delta_i|^p from k on (the slope of f on
// the segment ending at thresholds[k]), cumulative[k] is f(thresholds[k]),
// and order[k] is the original coordinate index. Coordinates whose direction
// component is zero carry no slope and are left out entirely.
struct BreakpointProfile {
  std::vector<double> thresholds;
  std::vector<double> slopes;
  std::vector<double> cumulative;
  std::vector<std::size_t> order;

  std::size_t size() const noexcept { return thresholds.size(); }
};

enum class SolveStatus { ok, unreachable, zero_delta };

// One row of a batch solve. solution is meaningful when status == ok;
// max_norm is populated when status == unreachable.
struct BatchResult {
  SolveStatus status = SolveStatus::ok;
  EtaSolution solution{};
  double max_norm = 0.0;
};

// Builds the breakpoint profile of an instance. Throws ZeroDeltaError when
// no coordinate contributes slope.
BreakpointProfile build_profile(const ProblemInstance& inst);

// Smallest eta >= 0 with effective_norm(inst, eta) == eps, found by inverting
// the breakpoint profile at eps^p. Throws UnreachableError (carrying the
// attainable maximum) when eps > max_effective_norm(inst).
EtaSolution solve_eta(const ProblemInstance& inst);

// Same inversion given a prebuilt profile, for callers reusing one profile
// across several eps values for the same (x, delta).
EtaSolution solve_eta(const ProblemInstance& inst, const BreakpointProfile& profile);

// Row-wise solve over row-major matrices x and delta of shape
// (eps.size(), n), all rows sharing p and bounds. Each row goes through
// exactly the single-instance code path; zero-direction and unreachable rows
// are reported in their BatchResult instead of aborting the batch. Results
// are ordered like the input rows.
std::vector<BatchResult> solve_eta_batch(std::span<const double> x,
                                         std::span<const double> delta,
                                         std::span<const double> eps,
                                         std::size_t n, double p,
                                         const DomainBounds& bounds);

}  // namespace clipscale

#endif  // CLIPSCALE_SOLVER_HPP
