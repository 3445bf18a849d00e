#ifndef CLIPSCALE_TESTS_REFERENCE_SOLVER_HPP
#define CLIPSCALE_TESTS_REFERENCE_SOLVER_HPP

// Straight-line reference solver for p = 2 on the unit box, written as a
// step-for-step rendering of the vectorized array formulation (square the
// direction, measure the space to the hit face, argsort the squared
// saturation points, reversed cumulative sum of squared direction entries,
// cumulative sum of segment increments, invert the first segment that
// reaches eps^2). Kept independent of the library so it can arbitrate.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace testref {

// Requires every delta component nonzero and eps attainable; mirrors the
// array code exactly, including its right-anchored inversion on the first
// segment.
inline double rescale_p2_unit_box(const std::vector<double>& x,
                                  const std::vector<double>& delta,
                                  double eps) {
  const std::size_t n = x.size();
  std::vector<double> delta2(n), space(n), f2(n);
  for (std::size_t i = 0; i < n; ++i) {
    delta2[i] = delta[i] * delta[i];
    space[i] = delta[i] >= 0.0 ? 1.0 - x[i] : x[i];
    f2[i] = space[i] * space[i] / delta2[i];
  }

  std::vector<std::size_t> ks(n);
  std::iota(ks.begin(), ks.end(), std::size_t{0});
  std::sort(ks.begin(), ks.end(),
            [&](std::size_t a, std::size_t b) { return f2[a] < f2[b]; });

  std::vector<double> f2_sorted(n), m(n);
  for (std::size_t k = 0; k < n; ++k) f2_sorted[k] = f2[ks[k]];
  double acc = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    acc += delta2[ks[k]];
    m[k] = acc;
  }

  std::vector<double> y(n);
  double cum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = k == 0 ? f2_sorted[0] : f2_sorted[k] - f2_sorted[k - 1];
    cum += m[k] * dx;
    y[k] = cum;
  }

  const double eps2 = eps * eps;
  std::size_t j = n;
  for (std::size_t k = 0; k < n; ++k) {
    if (y[k] >= eps2) {
      j = k;
      break;
    }
  }
  if (j == n) throw std::out_of_range("eps**2 beyond the cumulative profile");

  const double eta2 = f2_sorted[j] - (y[j] - eps2) / m[j];
  return std::sqrt(eta2);
}

}  // namespace testref

#endif  // CLIPSCALE_TESTS_REFERENCE_SOLVER_HPP
