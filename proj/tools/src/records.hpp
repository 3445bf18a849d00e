#ifndef CLIPSCALE_TOOLS_RECORDS_HPP
#define CLIPSCALE_TOOLS_RECORDS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "clipscale/core.hpp"
#include "json.hpp"

namespace clipscale::cli {

// Input record: one rescaling problem per line. Field values override the
// command-line defaults; unknown fields are rejected.
struct InstanceRecord {
  std::optional<std::string> id;
  std::vector<double> x;
  std::optional<std::vector<double>> delta;
  std::optional<double> eps;
  std::optional<double> p;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> eta;  // accepted by the norm subcommand only
};

// Which optional fields a subcommand accepts.
enum class RecordMode { solve, norm, grad, noise };

InstanceRecord parse_record(const nlohmann::json& j, RecordMode mode);
nlohmann::json to_json(const InstanceRecord& rec);

enum class RecordStatus { ok, unreachable, zero_delta, degenerate };
const char* to_string(RecordStatus status);

struct SolutionRecord {
  std::optional<std::string> id;
  RecordStatus status = RecordStatus::ok;
  double eta = 0.0;
  double achieved_norm = 0.0;
  std::size_t saturated_count = 0;
  double max_norm = 0.0;  // populated when unreachable
  std::optional<std::vector<double>> v;
};
nlohmann::json to_json(const SolutionRecord& rec);
std::string to_csv(const SolutionRecord& rec);

struct GradientRecord {
  std::optional<std::string> id;
  RecordStatus status = RecordStatus::ok;
  double eta = 0.0;
  double d_eps = 0.0;
  std::vector<double> d_x;
  std::vector<double> d_delta;
  bool at_breakpoint = false;
  double max_norm = 0.0;
};
nlohmann::json to_json(const GradientRecord& rec);

// Command-line defaults filling fields a record leaves out.
struct RecordDefaults {
  std::optional<double> eps;
  std::optional<double> eta;
  double p = 2.0;
  double a = 0.0;
  double b = 1.0;
};

struct EffectiveParams {
  std::optional<std::string> id;
  double eps = 0.0;
  double p = 2.0;
  double a = 0.0;
  double b = 1.0;
  std::optional<double> eta;
};

// Merges record fields over the defaults. Throws std::invalid_argument when
// eps is required but provided nowhere.
EffectiveParams effective_params(const InstanceRecord& rec,
                                 const RecordDefaults& defaults, bool need_eps);

// CSV input: column positions for tabular corpora, all zero-based.
struct ColumnRange {
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive
};
ColumnRange parse_column_range(const std::string& text);

struct CsvSpec {
  std::optional<ColumnRange> x_cols;
  std::optional<ColumnRange> delta_cols;
  std::optional<std::size_t> eps_col;
  std::optional<std::size_t> id_col;
};
InstanceRecord parse_csv_record(const std::string& line, const CsvSpec& spec);

}  // namespace clipscale::cli

#endif  // CLIPSCALE_TOOLS_RECORDS_HPP
