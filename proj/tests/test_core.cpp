#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "clipscale/clipscale.hpp"
#include "doctest.h"
#include "fuzz.hpp"

using namespace clipscale;

TEST_CASE("clip projects element-wise onto the box") {
  DomainBounds unit(0.0, 1.0);
  CHECK(clip(std::vector<double>{-0.5, 0.5, 1.5}, unit) ==
        std::vector<double>{0.0, 0.5, 1.0});
  CHECK(clip(std::vector<double>{0.2, 0.8}, unit) ==
        std::vector<double>{0.2, 0.8});
  CHECK(clip(std::vector<double>{3.0, -3.0}, DomainBounds(-1.0, 1.0)) ==
        std::vector<double>{1.0, -1.0});
}

TEST_CASE("domain bounds reject degenerate or non-finite boxes") {
  CHECK_THROWS_AS(DomainBounds(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(DomainBounds(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(DomainBounds(0.0, std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
  CHECK_THROWS_AS(DomainBounds(std::nan(""), 1.0), std::invalid_argument);
}

TEST_CASE("instance construction enforces its invariants") {
  DomainBounds unit(0.0, 1.0);
  auto nan = std::nan("");

  CHECK_THROWS_AS(ProblemInstance({}, {}, 0.1, 2.0, unit),
                  std::invalid_argument);
  CHECK_THROWS_AS(ProblemInstance({0.5}, {1.0, 1.0}, 0.1, 2.0, unit),
                  std::invalid_argument);
  CHECK_THROWS_AS(ProblemInstance({1.5}, {1.0}, 0.1, 2.0, unit),
                  std::invalid_argument);
  CHECK_THROWS_AS(ProblemInstance({-0.1}, {1.0}, 0.1, 2.0, unit),
                  std::invalid_argument);
  CHECK_THROWS_AS(ProblemInstance({nan}, {1.0}, 0.1, 2.0, unit),
                  std::invalid_argument);
  CHECK_THROWS_AS(ProblemInstance({0.5}, {nan}, 0.1, 2.0, unit),
                  std::invalid_argument);
  CHECK_THROWS_AS(ProblemInstance({0.5}, {1.0}, -0.1, 2.0, unit),
                  std::invalid_argument);
  CHECK_THROWS_AS(ProblemInstance({0.5}, {1.0}, nan, 2.0, unit),
                  std::invalid_argument);
  CHECK_THROWS_AS(ProblemInstance({0.5}, {1.0}, 0.1, 0.5, unit),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      ProblemInstance({0.5}, {1.0}, 0.1,
                      std::numeric_limits<double>::infinity(), unit),
      std::invalid_argument);
  CHECK_THROWS_AS(ProblemInstance({0.5, 0.5}, {0.0, 0.0}, 0.1, 2.0, unit),
                  ZeroDeltaError);

  // Boundary x and p exactly 1 are legal.
  CHECK_NOTHROW(ProblemInstance({0.0, 1.0}, {1.0, -1.0}, 0.1, 1.0, unit));
}

TEST_CASE("effective_norm matches hand-worked points") {
  DomainBounds unit(0.0, 1.0);

  ProblemInstance interior({0.5}, {1.0}, 0.0, 2.0, unit);
  CHECK(effective_norm(interior, 0.0) == 0.0);
  CHECK(effective_norm(interior, 0.3) == doctest::Approx(0.3).epsilon(1e-14));

  ProblemInstance near_face({0.9}, {1.0}, 0.0, 2.0, unit);
  const double expected = naive_effective_norm(near_face, 0.5);
  CHECK(expected == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(effective_norm(near_face, 0.5) ==
        doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("unconstrained_eta is eps over the direction norm") {
  DomainBounds unit(0.0, 1.0);
  ProblemInstance a({0.5, 0.5}, {3.0, 4.0}, 1.0, 2.0, unit);
  CHECK(unconstrained_eta(a) == doctest::Approx(0.2).epsilon(1e-15));

  ProblemInstance b({0.5, 0.5, 0.5, 0.5}, {1.0, 1.0, 1.0, 1.0}, 2.0, 1.0, unit);
  CHECK(unconstrained_eta(b) == doctest::Approx(0.5).epsilon(1e-15));

  CHECK(unconstrained_eta(a.with_eps(0.0)) == 0.0);
}

TEST_CASE("max_effective_norm sums the face distances") {
  DomainBounds unit(0.0, 1.0);

  ProblemInstance two({0.9, 0.5}, {1.0, 1.0}, 0.0, 2.0, unit);
  CHECK(max_effective_norm(two) ==
        doctest::Approx(std::sqrt(0.01 + 0.25)).epsilon(1e-14));

  ProblemInstance down({0.5}, {-1.0}, 0.0, 1.0, unit);
  CHECK(max_effective_norm(down) == doctest::Approx(0.5).epsilon(1e-15));

  // Full box traversal: x at the lower face, direction positive, p = 1.
  const std::size_t n = 7;
  DomainBounds wide(-2.0, 3.0);
  ProblemInstance traverse(std::vector<double>(n, -2.0),
                           std::vector<double>(n, 0.7), 0.0, 1.0, wide);
  CHECK(max_effective_norm(traverse) ==
        doctest::Approx(double(n) * 5.0).epsilon(1e-14));
}

TEST_CASE("effective_norm properties on fuzzed instances") {
  std::mt19937_64 rng(20240811);
  fuzz::InstanceParams prm;
  prm.max_n = 48;

  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = fuzz::random_instance(rng, prm);
    const double width = inst.bounds().upper() - inst.bounds().lower();
    const double dnorm = p_norm(inst.delta(), inst.p());

    // Non-decreasing in eta, never above eta * ||delta||_p, matches the
    // literal clip-then-norm evaluation.
    double prev = 0.0;
    for (double frac : {0.0, 0.01, 0.1, 0.3, 1.0, 3.0, 10.0}) {
      const double eta = frac * width / dnorm * double(inst.size());
      const double fast = effective_norm(inst, eta);
      const double slow = naive_effective_norm(inst, eta);
      CHECK(fast >= prev);
      CHECK(fast <= eta * dnorm * (1.0 + 1e-12));
      CHECK(std::abs(fast - slow) <= 1e-12 * std::max({fast, slow, 1e-300}));
      prev = fast;
    }

    // Exact plateau once every coordinate is past its face.
    const double saturation_eta = 2.0 * fuzz::last_clip_eta(inst) + 1.0;
    CHECK(effective_norm(inst, saturation_eta) == max_effective_norm(inst));
  }
}

TEST_CASE("zero direction components contribute nothing") {
  std::mt19937_64 rng(7);
  fuzz::InstanceParams prm;
  prm.min_n = 4;
  prm.max_n = 16;
  prm.zero_prob = 0.4;

  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = fuzz::random_instance(rng, prm);
    std::vector<double> xs, ds;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      if (inst.delta()[i] != 0.0) {
        xs.push_back(inst.x()[i]);
        ds.push_back(inst.delta()[i]);
      }
    }
    const ProblemInstance squeezed(xs, ds, 0.0, inst.p(), inst.bounds());
    for (double eta : {0.2, 1.7}) {
      CHECK(effective_norm(inst, eta) == effective_norm(squeezed, eta));
    }
    CHECK(max_effective_norm(inst) == max_effective_norm(squeezed));
  }
}
