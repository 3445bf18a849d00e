#ifndef CLIPSCALE_ORACLE_HPP
#define CLIPSCALE_ORACLE_HPP

#include "clipscale/core.hpp"

namespace clipscale {

// Reference implementations kept deliberately independent of the breakpoint
// machinery. They exist to cross-check the analytic path and to serve as the
// iterative baseline in benchmarks, not for production use.

// || clip(x + eta * delta) - x ||_p computed literally: perturb, clip
// element-wise, subtract, take the p-norm.
double naive_effective_norm(const ProblemInstance& inst, double eta);

// Optional diagnostics for solve_eta_bisect.
struct BisectStats {
  int doublings = 0;    // bracket-growing evaluations
  int iterations = 0;   // interval halvings
  double lo = 0.0;      // final bracket
  double hi = 0.0;
  double residual = 0.0;  // |norm(eta) - eps| at the returned eta
};

// Binary search for the scale: brackets [0, hi] with hi doubling from the
// unconstrained solution until the clipped norm reaches eps, then halves
// until the norm residual is within tol (tol lives in norm space, on eps).
// Also accepts once the bracket collapses to floating-point resolution.
// Throws UnreachableError when eps exceeds the attainable maximum and
// NonConvergenceError when the evaluation budget runs out first.
double solve_eta_bisect(const ProblemInstance& inst, double tol,
                        int max_iter = 200, BisectStats* stats = nullptr);

}  // namespace clipscale

#endif  // CLIPSCALE_ORACLE_HPP
