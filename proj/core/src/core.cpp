#include "clipscale/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "clipscale/errors.hpp"
#include "clipscale/pnorm.hpp"

namespace clipscale {

DomainBounds::DomainBounds(double lower, double upper)
    : lower_(lower), upper_(upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper)) {
    throw std::invalid_argument("domain bounds must be finite");
  }
  if (!(lower < upper)) {
    throw std::invalid_argument("domain bounds must satisfy lower < upper");
  }
}

ProblemInstance::ProblemInstance(std::vector<double> x,
                                 std::vector<double> delta, double eps,
                                 double p, DomainBounds bounds)
    : x_(std::move(x)),
      delta_(std::move(delta)),
      eps_(eps),
      p_(p),
      bounds_(bounds) {
  if (x_.empty()) {
    throw std::invalid_argument("instance needs at least one coordinate");
  }
  if (x_.size() != delta_.size()) {
    throw std::invalid_argument("x and delta must have equal length");
  }
  if (!std::isfinite(eps_) || eps_ < 0.0) {
    throw std::invalid_argument("eps must be finite and non-negative");
  }
  if (!std::isfinite(p_) || p_ < 1.0) {
    throw std::invalid_argument("p must be finite and >= 1");
  }
  bool all_zero = true;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(delta_[i])) {
      throw std::invalid_argument("x and delta must be finite");
    }
    if (x_[i] < bounds_.lower() || x_[i] > bounds_.upper()) {
      throw std::invalid_argument("x must lie inside the domain box");
    }
    if (delta_[i] != 0.0) all_zero = false;
  }
  if (all_zero) throw ZeroDeltaError();
}

ProblemInstance ProblemInstance::with_eps(double eps) const {
  ProblemInstance copy = *this;
  if (!std::isfinite(eps) || eps < 0.0) {
    throw std::invalid_argument("eps must be finite and non-negative");
  }
  copy.eps_ = eps;
  return copy;
}

std::vector<double> clip(std::span<const double> v, const DomainBounds& bounds) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::clamp(v[i], bounds.lower(), bounds.upper());
  }
  return out;
}

double effective_norm(const ProblemInstance& inst, double eta) {
  const double p = inst.p();
  const double tp = pow_abs(eta, p);
  const double lo = inst.bounds().lower();
  const double hi = inst.bounds().upper();
  const auto& x = inst.x();
  const auto& delta = inst.delta();

  const double sum = with_power(p, [&](auto power) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = delta[i];
      if (d == 0.0) continue;
      const double weight = power(d);
      if (weight == 0.0) continue;  // |d|^p underflowed; contributes nothing
      const double face = d > 0.0 ? hi - x[i] : x[i] - lo;
      acc += std::min(weight * tp, power(face));
    }
    return acc;
  });
  return root_p(sum, p);
}

double unconstrained_eta(const ProblemInstance& inst) {
  if (inst.eps() == 0.0) return 0.0;
  const double norm = p_norm(inst.delta(), inst.p());
  if (norm == 0.0) throw ZeroDeltaError();
  return inst.eps() / norm;
}

double max_effective_norm(const ProblemInstance& inst) {
  const double p = inst.p();
  const double lo = inst.bounds().lower();
  const double hi = inst.bounds().upper();
  const auto& x = inst.x();
  const auto& delta = inst.delta();

  const double sum = with_power(p, [&](auto power) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = delta[i];
      if (d == 0.0 || power(d) == 0.0) continue;
      const double face = d > 0.0 ? hi - x[i] : x[i] - lo;
      acc += power(face);
    }
    return acc;
  });
  return root_p(sum, p);
}

}  // namespace clipscale
