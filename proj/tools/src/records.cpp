#include "records.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace clipscale::cli {

namespace {

using nlohmann::json;

double number_field(const json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_number()) {
    throw std::invalid_argument("field '" + key + "' must be a number");
  }
  return v.get<double>();
}

std::vector<double> array_field(const json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (!v.is_array()) {
    throw std::invalid_argument("field '" + key + "' must be an array");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) {
      throw std::invalid_argument("field '" + key + "' must hold numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

}  // namespace

InstanceRecord parse_record(const nlohmann::json& j, RecordMode mode) {
  if (!j.is_object()) throw std::invalid_argument("record must be an object");

  for (const auto& [key, value] : j.items()) {
    (void)value;
    const bool known =
        key == "x" || key == "eps" || key == "p" || key == "a" || key == "b" ||
        key == "id" || (key == "delta" && mode != RecordMode::noise) ||
        (key == "eta" && mode == RecordMode::norm);
    if (!known) throw std::invalid_argument("unknown field '" + key + "'");
  }

  InstanceRecord rec;
  rec.x = array_field(j, "x");
  if (j.contains("delta")) rec.delta = array_field(j, "delta");
  if (j.contains("eps")) rec.eps = number_field(j, "eps");
  if (j.contains("p")) rec.p = number_field(j, "p");
  if (j.contains("a")) rec.a = number_field(j, "a");
  if (j.contains("b")) rec.b = number_field(j, "b");
  if (j.contains("eta")) rec.eta = number_field(j, "eta");
  if (j.contains("id")) {
    if (!j.at("id").is_string()) {
      throw std::invalid_argument("field 'id' must be a string");
    }
    rec.id = j.at("id").get<std::string>();
  }

  if (mode != RecordMode::noise && !rec.delta) {
    throw std::invalid_argument("record is missing 'delta'");
  }
  return rec;
}

nlohmann::json to_json(const InstanceRecord& rec) {
  json j;
  if (rec.id) j["id"] = *rec.id;
  j["x"] = rec.x;
  if (rec.delta) j["delta"] = *rec.delta;
  if (rec.eps) j["eps"] = *rec.eps;
  if (rec.p) j["p"] = *rec.p;
  if (rec.a) j["a"] = *rec.a;
  if (rec.b) j["b"] = *rec.b;
  if (rec.eta) j["eta"] = *rec.eta;
  return j;
}

const char* to_string(RecordStatus status) {
  switch (status) {
    case RecordStatus::ok: return "ok";
    case RecordStatus::unreachable: return "unreachable";
    case RecordStatus::zero_delta: return "zero_delta";
    case RecordStatus::degenerate: return "degenerate";
  }
  return "unknown";
}

nlohmann::json to_json(const SolutionRecord& rec) {
  json j;
  if (rec.id) j["id"] = *rec.id;
  j["status"] = to_string(rec.status);
  if (rec.status == RecordStatus::ok) {
    j["eta"] = rec.eta;
    j["achieved_norm"] = rec.achieved_norm;
    j["saturated_count"] = rec.saturated_count;
    if (rec.v) j["v"] = *rec.v;
  } else if (rec.status == RecordStatus::unreachable) {
    j["max_norm"] = rec.max_norm;
  }
  return j;
}

std::string to_csv(const SolutionRecord& rec) {
  std::ostringstream out;
  out.precision(17);
  out << (rec.id ? *rec.id : "") << ',' << to_string(rec.status) << ',';
  if (rec.status == RecordStatus::ok) {
    out << rec.eta << ',' << rec.achieved_norm << ',' << rec.saturated_count;
  } else {
    out << ",,";
  }
  out << ',';
  if (rec.status == RecordStatus::unreachable) out << rec.max_norm;
  return out.str();
}

nlohmann::json to_json(const GradientRecord& rec) {
  json j;
  if (rec.id) j["id"] = *rec.id;
  j["status"] = to_string(rec.status);
  if (rec.status == RecordStatus::ok) {
    j["eta"] = rec.eta;
    j["d_eps"] = rec.d_eps;
    j["d_x"] = rec.d_x;
    j["d_delta"] = rec.d_delta;
    j["at_breakpoint"] = rec.at_breakpoint;
  } else if (rec.status == RecordStatus::unreachable) {
    j["max_norm"] = rec.max_norm;
  }
  return j;
}

EffectiveParams effective_params(const InstanceRecord& rec,
                                 const RecordDefaults& defaults,
                                 bool need_eps) {
  EffectiveParams out;
  out.id = rec.id;
  out.p = rec.p.value_or(defaults.p);
  out.a = rec.a.value_or(defaults.a);
  out.b = rec.b.value_or(defaults.b);
  out.eta = rec.eta ? rec.eta : defaults.eta;
  if (rec.eps) {
    out.eps = *rec.eps;
  } else if (defaults.eps) {
    out.eps = *defaults.eps;
  } else if (need_eps) {
    throw std::invalid_argument("record has no 'eps' and --eps was not given");
  }
  return out;
}

ColumnRange parse_column_range(const std::string& text) {
  const auto dash = text.find('-');
  auto parse_index = [](const std::string& s) {
    std::size_t value = 0;
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
      throw std::invalid_argument("bad column index '" + s + "'");
    }
    return value;
  };
  ColumnRange range;
  if (dash == std::string::npos) {
    range.first = range.last = parse_index(text);
  } else {
    range.first = parse_index(text.substr(0, dash));
    range.last = parse_index(text.substr(dash + 1));
  }
  if (range.last < range.first) {
    throw std::invalid_argument("column range '" + text + "' is reversed");
  }
  return range;
}

InstanceRecord parse_csv_record(const std::string& line, const CsvSpec& spec) {
  if (!spec.x_cols) {
    throw std::invalid_argument("csv input requires --x-cols");
  }

  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, ',')) cells.push_back(cell);

  auto number_at = [&](std::size_t col) {
    if (col >= cells.size()) {
      throw std::invalid_argument("csv row has no column " +
                                  std::to_string(col));
    }
    try {
      std::size_t used = 0;
      const double v = std::stod(cells[col], &used);
      if (used != cells[col].size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument("csv column " + std::to_string(col) +
                                  " is not a number");
    }
  };

  InstanceRecord rec;
  for (std::size_t c = spec.x_cols->first; c <= spec.x_cols->last; ++c) {
    rec.x.push_back(number_at(c));
  }
  if (spec.delta_cols) {
    std::vector<double> d;
    for (std::size_t c = spec.delta_cols->first; c <= spec.delta_cols->last; ++c) {
      d.push_back(number_at(c));
    }
    rec.delta = std::move(d);
  }
  if (spec.eps_col) rec.eps = number_at(*spec.eps_col);
  if (spec.id_col) {
    if (*spec.id_col >= cells.size()) {
      throw std::invalid_argument("csv row has no column " +
                                  std::to_string(*spec.id_col));
    }
    rec.id = cells[*spec.id_col];
  }
  return rec;
}

}  // namespace clipscale::cli
