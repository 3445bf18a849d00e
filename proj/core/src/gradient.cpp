#include "clipscale/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "clipscale/errors.hpp"
#include "clipscale/pnorm.hpp"

namespace clipscale {

namespace {
constexpr double kBreakpointTol = 1e-9;

inline double sign(double v) { return v > 0.0 ? 1.0 : -1.0; }
}  // namespace

EtaGradient gradient_eta(const ProblemInstance& inst, const EtaSolution& sol) {
  const double eps = inst.eps();
  if (eps == 0.0) {
    throw DegenerateGradientError(
        "eta is not two-sided differentiable at eps == 0");
  }

  const double p = inst.p();
  const double lo = inst.bounds().lower();
  const double hi = inst.bounds().upper();
  const auto& x = inst.x();
  const auto& delta = inst.delta();
  const std::size_t n = x.size();
  const double t = pow_abs(sol.eta, p);

  // Classify coordinates against t = eta^p; thresholds meeting t exactly
  // count as saturated, matching the solver's convention.
  std::vector<bool> saturated(n, false);
  double active_mass = 0.0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double d = delta[i];
    if (d == 0.0) continue;
    const double weight = pow_abs(d, p);
    if (weight == 0.0) continue;
    const double face = d > 0.0 ? hi - x[i] : x[i] - lo;
    const double threshold = pow_abs(face, p) / weight;
    min_gap = std::min(min_gap, std::abs(t - threshold));
    if (threshold <= t) {
      saturated[i] = true;
    } else {
      active_mass += weight;
    }
  }

  EtaGradient grad;
  grad.d_x.assign(n, 0.0);
  grad.d_delta.assign(n, 0.0);
  grad.at_breakpoint = min_gap <= kBreakpointTol * std::max(1.0, t);

  if (active_mass == 0.0) {
    throw DegenerateGradientError(
        "no active coordinate: eta sits at the saturation plateau");
  }

  const double eta_pm1 = pow_abs(sol.eta, p - 1.0);
  grad.d_eps = pow_abs(eps, p - 1.0) / (active_mass * eta_pm1);

  for (std::size_t i = 0; i < n; ++i) {
    const double d = delta[i];
    if (d == 0.0 || pow_abs(d, p) == 0.0) continue;
    if (saturated[i]) {
      const double face = d > 0.0 ? hi - x[i] : x[i] - lo;
      grad.d_x[i] = sign(d) * pow_abs(face, p - 1.0) / (active_mass * eta_pm1);
    } else {
      grad.d_delta[i] = -sol.eta * sign(d) * pow_abs(d, p - 1.0) / active_mass;
    }
  }
  return grad;
}

}  // namespace clipscale
