#ifndef CLIPSCALE_TOOLS_COMMANDS_HPP
#define CLIPSCALE_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "records.hpp"

namespace clipscale::cli {

// Exit codes: 0 everything solved, 1 usage/parse/invalid-record trouble,
// 2 well-formed records that failed (unreachable, zero direction, degenerate).
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRecordFailed = 2;

enum class Format { jsonl, csv };

struct IoOptions {
  Format format = Format::jsonl;
  CsvSpec csv;
  RecordDefaults defaults;
  bool emit_vector = false;
};

struct NoiseConfig {
  enum class Dist { gaussian, uniform };
  Dist dist = Dist::gaussian;
  std::uint64_t seed = 0;
};

struct BenchConfig {
  std::size_t n = 4096;
  int trials = 10;
  std::size_t batch = 0;  // extra batch-solve timing when > 0
  double p = 2.0;
  std::uint64_t seed = 1;
  double bisect_tol = 1e-12;
};

int run_solve(std::istream& in, std::ostream& out, std::ostream& diag,
              const IoOptions& opt);
int run_norm(std::istream& in, std::ostream& out, std::ostream& diag,
             const IoOptions& opt);
int run_grad(std::istream& in, std::ostream& out, std::ostream& diag,
             const IoOptions& opt);
int run_noise(std::istream& in, std::ostream& out, std::ostream& diag,
              const IoOptions& opt, const NoiseConfig& noise);
int run_bench(std::ostream& out, std::ostream& diag, const BenchConfig& cfg);

// Deterministic per-record generator: reseeding from (seed, index) keeps
// results independent of processing order.
std::mt19937_64 record_rng(std::uint64_t seed, std::uint64_t index);
std::vector<double> draw_direction(std::mt19937_64& rng, std::size_t n,
                                   NoiseConfig::Dist dist);

}  // namespace clipscale::cli

#endif  // CLIPSCALE_TOOLS_COMMANDS_HPP
