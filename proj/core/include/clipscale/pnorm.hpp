#ifndef CLIPSCALE_PNORM_HPP
#define CLIPSCALE_PNORM_HPP

#include <cmath>
#include <span>

namespace clipscale {

// |v|^p with direct multiplication for the common orders p = 1 and p = 2.
inline double pow_abs(double v, double p) {
  const double a = std::abs(v);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

// s^(1/p) for s >= 0, the inverse of pow_abs on non-negative input.
inline double root_p(double s, double p) {
  if (p == 1.0) return s;
  if (p == 2.0) return std::sqrt(s);
  return std::pow(s, 1.0 / p);
}

// Invokes fn with a |.|^p functor specialized for the common orders, keeping
// the per-element dispatch out of hot loops. The functors compute exactly
// what pow_abs computes.
template <typename Fn>
decltype(auto) with_power(double p, Fn&& fn) {
  if (p == 1.0) return fn([](double v) { return std::abs(v); });
  if (p == 2.0) return fn([](double v) { return v * v; });
  return fn([p](double v) { return std::pow(std::abs(v), p); });
}

// Plain p-norm, no clipping involved.
inline double p_norm(std::span<const double> v, double p) {
  const double sum = with_power(p, [&](auto power) {
    double acc = 0.0;
    for (double vi : v) acc += power(vi);
    return acc;
  });
  return root_p(sum, p);
}

}  // namespace clipscale

#endif  // CLIPSCALE_PNORM_HPP
