#ifndef CLIPSCALE_TESTS_FUZZ_HPP
#define CLIPSCALE_TESTS_FUZZ_HPP

// Seeded random-instance generators shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "clipscale/clipscale.hpp"

namespace fuzz {

struct InstanceParams {
  std::size_t min_n = 1;
  std::size_t max_n = 64;
  std::vector<double> p_choices = {1.0, 1.5, 2.0, 3.0};
  bool random_bounds = true;  // unit box when false
  double zero_prob = 0.1;     // chance a delta component is exactly zero
  double min_abs_delta = 0.0; // resample nonzero components below this
  double x_margin = 0.0;      // keep x this fraction of the width off the faces
};

inline clipscale::DomainBounds make_bounds(std::mt19937_64& rng,
                                           const InstanceParams& prm) {
  if (!prm.random_bounds) return {0.0, 1.0};
  std::uniform_real_distribution<double> lo(-5.0, 5.0);
  std::uniform_real_distribution<double> width(0.5, 10.0);
  const double a = lo(rng);
  return {a, a + width(rng)};
}

// Instance with eps = 0; callers pick a target via with_eps once they know
// the attainable maximum.
inline clipscale::ProblemInstance random_instance(std::mt19937_64& rng,
                                                  const InstanceParams& prm) {
  const auto bounds = make_bounds(rng, prm);
  std::uniform_int_distribution<std::size_t> nd(prm.min_n, prm.max_n);
  const std::size_t n = nd(rng);

  const double width = bounds.upper() - bounds.lower();
  const double margin = prm.x_margin * width;
  std::uniform_real_distribution<double> xd(bounds.lower() + margin,
                                            bounds.upper() - margin);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const double p = prm.p_choices[std::uniform_int_distribution<std::size_t>(
      0, prm.p_choices.size() - 1)(rng)];

  std::vector<double> x(n), delta(n);
  while (true) {
    bool any_nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = xd(rng);
      if (unit(rng) < prm.zero_prob) {
        delta[i] = 0.0;
      } else {
        do {
          delta[i] = gauss(rng);
        } while (std::abs(delta[i]) <= prm.min_abs_delta);
        any_nonzero = true;
      }
    }
    if (any_nonzero) break;
  }
  return {std::move(x), std::move(delta), 0.0, p, bounds};
}

// Uniform draw over (lo_frac, hi_frac] of the attainable maximum.
inline double solvable_eps(std::mt19937_64& rng,
                           const clipscale::ProblemInstance& inst,
                           double lo_frac = 0.0, double hi_frac = 1.0) {
  const double max_norm = clipscale::max_effective_norm(inst);
  std::uniform_real_distribution<double> ud(lo_frac, hi_frac);
  double u = hi_frac - (ud(rng) - lo_frac);  // in (lo_frac, hi_frac]
  return u * max_norm;
}

// Scale at which the first coordinate reaches its face (largest eta with
// nothing clipped) and at which the last one does (full saturation), both in
// eta space.
inline double first_clip_eta(const clipscale::ProblemInstance& inst) {
  const auto& x = inst.x();
  const auto& delta = inst.delta();
  double r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (delta[i] == 0.0) continue;
    const double face = delta[i] > 0.0 ? inst.bounds().upper() - x[i]
                                       : x[i] - inst.bounds().lower();
    r = std::min(r, face / std::abs(delta[i]));
  }
  return r;
}

inline double last_clip_eta(const clipscale::ProblemInstance& inst) {
  const auto& x = inst.x();
  const auto& delta = inst.delta();
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (delta[i] == 0.0) continue;
    const double face = delta[i] > 0.0 ? inst.bounds().upper() - x[i]
                                       : x[i] - inst.bounds().lower();
    r = std::max(r, face / std::abs(delta[i]));
  }
  return r;
}

}  // namespace fuzz

#endif  // CLIPSCALE_TESTS_FUZZ_HPP
