#include "clipscale/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "clipscale/errors.hpp"
#include "clipscale/pnorm.hpp"

namespace clipscale {

double naive_effective_norm(const ProblemInstance& inst, double eta) {
  const double p = inst.p();
  const double lo = inst.bounds().lower();
  const double hi = inst.bounds().upper();
  const auto& x = inst.x();
  const auto& delta = inst.delta();

  const double sum = with_power(p, [&](auto power) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double clipped = std::clamp(x[i] + eta * delta[i], lo, hi);
      acc += power(clipped - x[i]);
    }
    return acc;
  });
  return root_p(sum, p);
}

double solve_eta_bisect(const ProblemInstance& inst, double tol, int max_iter,
                        BisectStats* stats) {
  const double eps = inst.eps();
  BisectStats local;
  if (eps == 0.0) {
    if (stats) *stats = local;
    return 0.0;
  }

  const double max_norm = max_effective_norm(inst);
  if (eps > max_norm) throw UnreachableError(max_norm);

  int budget = max_iter;
  double lo = 0.0;
  double hi = unconstrained_eta(inst);
  double norm_hi = naive_effective_norm(inst, hi);
  while (norm_hi < eps) {
    if (--budget < 0) throw NonConvergenceError(max_iter);
    lo = hi;
    hi *= 2.0;
    norm_hi = naive_effective_norm(inst, hi);
    ++local.doublings;
  }

  double mid = hi;
  double residual = std::abs(norm_hi - eps);
  for (;;) {
    mid = 0.5 * (lo + hi);
    const double norm_mid = naive_effective_norm(inst, mid);
    residual = std::abs(norm_mid - eps);
    ++local.iterations;
    if (residual <= tol) break;
    // Bracket exhausted at floating-point resolution: accept the midpoint.
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                       std::max(hi, 1.0)) {
      break;
    }
    if (--budget < 0) throw NonConvergenceError(max_iter);
    if (norm_mid < eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  local.lo = lo;
  local.hi = hi;
  local.residual = residual;
  if (stats) *stats = local;
  return mid;
}

}  // namespace clipscale
