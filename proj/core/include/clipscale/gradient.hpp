#ifndef CLIPSCALE_GRADIENT_HPP
#define CLIPSCALE_GRADIENT_HPP

#include <vector>

#include "clipscale/core.hpp"

namespace clipscale {

// Partial derivatives of the solved scale. The solved eta is piecewise smooth
// in (eps, x, delta) with kinks where t = eta^p meets a saturation threshold;
// at_breakpoint reports when the solution sits within tolerance of such a
// kink, in which case the emitted values are one-sided.
struct EtaGradient {
  double d_eps = 0.0;
  std::vector<double> d_x;
  std::vector<double> d_delta;
  bool at_breakpoint = false;
};

// Closed-form derivatives of eta at a solution previously produced by
// solve_eta on the same instance. With S the saturated coordinates, A the
// active ones, M the active slope mass sum_A |delta_i|^p:
//
//   d eta / d eps     = eps^(p-1) / (M eta^(p-1))
//   d eta / d x_i     = sgn(delta_i) |c_i - x_i|^(p-1) / (M eta^(p-1)),  i in S
//   d eta / d delta_i = -eta sgn(delta_i) |delta_i|^(p-1) / M,           i in A
//
// and zero elsewhere. Coordinates whose threshold equals eta^p count as
// saturated. Throws DegenerateGradientError for eps == 0 (only a one-sided
// derivative exists there) and when no coordinate is active (eta at the
// saturation plateau, where M = 0).
EtaGradient gradient_eta(const ProblemInstance& inst, const EtaSolution& sol);

}  // namespace clipscale

#endif  // CLIPSCALE_GRADIENT_HPP
