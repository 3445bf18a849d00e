#include "clipscale/solver.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <stdexcept>

#include "clipscale/errors.hpp"
#include "clipscale/pnorm.hpp"

namespace clipscale {

namespace {

struct Entry {
  double threshold;
  double weight;  // |delta_i|^p
  std::size_t index;
};

// Inversion shared by both solve paths. Thresholds arrive sorted; slope(k)
// returns the suffix mass on the segment ending at thresholds[k]; f_at(k)
// the cumulative value there. Returns the segment index and t = eta^p.
struct Segment {
  std::size_t j;
  double t;
};

// The cumulative callback is invoked once per index, in order, so a scanning
// implementation may accumulate state.
template <typename Thresholds, typename Slope, typename Cumulative>
Segment invert_at(double eps_p, std::size_t m, const Thresholds& threshold_at,
                  const Slope& slope_at, const Cumulative& f_at) {
  std::size_t j = m;
  double f_j = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double f = f_at(k);
    if (f >= eps_p) {
      j = k;
      f_j = f;
      break;
    }
  }
  if (j == m) {
    // Reachability already vouched for eps; rounding pushed eps^p past the
    // cumulative plateau, so clamp to the last breakpoint.
    return {m - 1, threshold_at(m - 1)};
  }
  assert(slope_at(j) > 0.0);
  double t;
  if (j == 0) {
    // First segment starts at (0, 0); anchoring there avoids cancellation
    // against thresholds[0] for small eps.
    t = eps_p / slope_at(0);
  } else {
    t = threshold_at(j) - (f_j - eps_p) / slope_at(j);
  }
  return {j, std::max(t, 0.0)};
}

// Scratch buffers for the sort-heavy solve path, reused across calls on the
// same thread.
struct SolveWorkspace {
  std::vector<std::uint64_t> keys;     // threshold bits, non-negative doubles
  std::vector<double> weights;         // |delta_i|^p aligned with keys
  std::vector<std::uint64_t> key_buf;
  std::vector<double> weight_buf;
  std::vector<double> suffix;          // suffix mass in sorted order
  std::vector<std::uint32_t> counts;
};

inline std::uint64_t key_bits(double v) {
  std::uint64_t k;
  std::memcpy(&k, &v, sizeof(k));
  return k;
}

inline double key_value(std::uint64_t k) {
  double v;
  std::memcpy(&v, &k, sizeof(v));
  return v;
}

// Sorts the (threshold bits, weight) columns by key, ascending. Non-negative
// IEEE doubles order like their unsigned bit patterns, and both branches are
// stable, so equal thresholds keep original coordinate order and the result
// matches the comparison sort used by build_profile bit for bit.
//
// Large inputs take a stable LSD radix sort over 11-bit digits (bucket
// tables and scatter streams stay cache-resident); every digit histogram
// comes from a single read and constant digits skip their scatter pass.
void sort_by_key(SolveWorkspace& ws, std::size_t n) {
  constexpr int kDigitBits = 11;
  constexpr int kPasses = (64 + kDigitBits - 1) / kDigitBits;
  constexpr std::size_t kBuckets = std::size_t{1} << kDigitBits;
  constexpr std::uint64_t kMask = kBuckets - 1;

  if (n <= 4096) {
    std::vector<std::pair<std::uint64_t, double>> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = {ws.keys[i], ws.weights[i]};
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      return a.first < b.first;
    });
    for (std::size_t i = 0; i < n; ++i) {
      ws.keys[i] = rows[i].first;
      ws.weights[i] = rows[i].second;
    }
    return;
  }

  ws.key_buf.resize(n);
  ws.weight_buf.resize(n);
  ws.counts.assign(kPasses * kBuckets, 0);

  std::uint32_t* const hist = ws.counts.data();
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t k = ws.keys[i];
    for (int pass = 0; pass < kPasses; ++pass) {
      ++hist[pass * kBuckets + ((k >> (pass * kDigitBits)) & kMask)];
    }
  }

  for (int pass = 0; pass < kPasses; ++pass) {
    std::uint32_t* const count = hist + pass * kBuckets;
    const int shift = pass * kDigitBits;
    if (count[(ws.keys[0] >> shift) & kMask] == n) continue;

    std::uint32_t running = 0;
    for (std::size_t b = 0; b < kBuckets; ++b) {
      const auto c = count[b];
      count[b] = running;
      running += c;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto d = (ws.keys[i] >> shift) & kMask;
      const auto dst = count[d]++;
      ws.key_buf[dst] = ws.keys[i];
      ws.weight_buf[dst] = ws.weights[i];
    }
    ws.keys.swap(ws.key_buf);
    ws.weights.swap(ws.weight_buf);
  }
}

EtaSolution finish_solution(const ProblemInstance& inst, double t,
                            std::size_t saturated, double active_mass) {
  EtaSolution sol;
  sol.eta = root_p(t, inst.p());
  sol.active_mass = active_mass;
  sol.saturated_count = saturated;
  sol.achieved_norm = effective_norm(inst, sol.eta);
  return sol;
}

}  // namespace

BreakpointProfile build_profile(const ProblemInstance& inst) {
  const double p = inst.p();
  const double lo = inst.bounds().lower();
  const double hi = inst.bounds().upper();
  const auto& x = inst.x();
  const auto& delta = inst.delta();
  const std::size_t n = x.size();

  std::vector<Entry> entries;
  entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = delta[i];
    if (d == 0.0) continue;
    const double weight = pow_abs(d, p);
    if (weight == 0.0) continue;
    const double face = d > 0.0 ? hi - x[i] : x[i] - lo;
    entries.push_back({pow_abs(face, p) / weight, weight, i});
  }
  if (entries.empty()) throw ZeroDeltaError();

  // Index tie-break keeps equal thresholds in original coordinate order.
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.threshold != b.threshold) return a.threshold < b.threshold;
    return a.index < b.index;
  });

  const std::size_t m = entries.size();
  BreakpointProfile profile;
  profile.thresholds.resize(m);
  profile.slopes.resize(m);
  profile.cumulative.resize(m);
  profile.order.resize(m);

  for (std::size_t k = 0; k < m; ++k) {
    profile.thresholds[k] = entries[k].threshold;
    profile.order[k] = entries[k].index;
  }
  double mass = 0.0;
  for (std::size_t k = m; k-- > 0;) {
    mass += entries[k].weight;
    profile.slopes[k] = mass;
  }
  double f = 0.0;
  double prev_t = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    f += profile.slopes[k] * (profile.thresholds[k] - prev_t);
    profile.cumulative[k] = f;
    prev_t = profile.thresholds[k];
  }
  return profile;
}

EtaSolution solve_eta(const ProblemInstance& inst,
                      const BreakpointProfile& profile) {
  if (inst.eps() == 0.0) return EtaSolution{};

  const double max_norm = max_effective_norm(inst);
  if (inst.eps() > max_norm) throw UnreachableError(max_norm);

  const std::size_t m = profile.size();
  assert(m > 0);
  const double eps_p = pow_abs(inst.eps(), inst.p());

  const auto seg = invert_at(
      eps_p, m, [&](std::size_t k) { return profile.thresholds[k]; },
      [&](std::size_t k) { return profile.slopes[k]; },
      [&](std::size_t k) { return profile.cumulative[k]; });

  const auto saturated = static_cast<std::size_t>(
      std::upper_bound(profile.thresholds.begin(), profile.thresholds.end(),
                       seg.t) -
      profile.thresholds.begin());
  return finish_solution(inst, seg.t, saturated, profile.slopes[seg.j]);
}

// Sort-bound hot path: same arithmetic as the profile route, with the
// breakpoints radix-sorted in workspace buffers and the cumulative scan
// stopping at the crossing segment. The face-distance sum doubles as the
// reachability bound, accumulated in the same order max_effective_norm uses.
EtaSolution solve_eta(const ProblemInstance& inst) {
  if (inst.eps() == 0.0) return EtaSolution{};

  const double p = inst.p();
  const double lo = inst.bounds().lower();
  const double hi = inst.bounds().upper();
  const auto& x = inst.x();
  const auto& delta = inst.delta();
  const std::size_t n = x.size();

  thread_local SolveWorkspace ws;
  ws.keys.resize(n);
  ws.weights.resize(n);

  std::size_t m = 0;
  double face_sum = 0.0;
  auto pack = [&](auto power) {
    for (std::size_t i = 0; i < n; ++i) {
      const double d = delta[i];
      if (d == 0.0) continue;
      const double weight = power(d);
      if (weight == 0.0) continue;
      const double face = d > 0.0 ? hi - x[i] : x[i] - lo;
      const double s = power(face);
      face_sum += s;
      ws.keys[m] = key_bits(s / weight);
      ws.weights[m] = weight;
      ++m;
    }
  };
  if (p == 1.0) {
    pack([](double v) { return std::abs(v); });
  } else if (p == 2.0) {
    pack([](double v) { return v * v; });
  } else {
    pack([p](double v) { return std::pow(std::abs(v), p); });
  }
  if (m == 0) throw ZeroDeltaError();

  const double max_norm = root_p(face_sum, p);
  if (inst.eps() > max_norm) throw UnreachableError(max_norm);

  radix_sort_by_key(ws, m);

  ws.suffix.resize(m);
  double mass = 0.0;
  for (std::size_t k = m; k-- > 0;) {
    mass += ws.weights[k];
    ws.suffix[k] = mass;
  }

  const double eps_p = pow_abs(inst.eps(), p);
  double f = 0.0;
  double prev_t = 0.0;
  std::size_t scanned = 0;
  const auto seg = invert_at(
      eps_p, m, [&](std::size_t k) { return key_value(ws.keys[k]); },
      [&](std::size_t k) { return ws.suffix[k]; },
      [&](std::size_t k) {
        assert(k == scanned);
        const double t_k = key_value(ws.keys[k]);
        f += ws.suffix[k] * (t_k - prev_t);
        prev_t = t_k;
        ++scanned;
        return f;
      });

  const auto saturated = static_cast<std::size_t>(
      std::upper_bound(ws.keys.begin(), ws.keys.begin() + m,
                       key_bits(seg.t)) -
      ws.keys.begin());
  return finish_solution(inst, seg.t, saturated, ws.suffix[seg.j]);
}

std::vector<BatchResult> solve_eta_batch(std::span<const double> x,
                                         std::span<const double> delta,
                                         std::span<const double> eps,
                                         std::size_t n, double p,
                                         const DomainBounds& bounds) {
  const std::size_t rows = eps.size();
  if (n == 0) throw std::invalid_argument("batch rows must have n >= 1");
  if (x.size() != rows * n || delta.size() != rows * n) {
    throw std::invalid_argument(
        "batch matrices must have eps.size() rows of n columns");
  }

  std::vector<BatchResult> results(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    BatchResult& out = results[r];
    try {
      ProblemInstance inst(
          std::vector<double>(x.begin() + r * n, x.begin() + (r + 1) * n),
          std::vector<double>(delta.begin() + r * n,
                              delta.begin() + (r + 1) * n),
          eps[r], p, bounds);
      out.solution = solve_eta(inst);
      out.status = SolveStatus::ok;
    } catch (const ZeroDeltaError&) {
      out.status = SolveStatus::zero_delta;
    } catch (const UnreachableError& e) {
      out.status = SolveStatus::unreachable;
      out.max_norm = e.max_norm();
    }
  }
  return results;
}

}  // namespace clipscale
