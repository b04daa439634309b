#pragma once

// Experiment reports. The results payload (everything except the wall-clock
// duration) is a pure function of config and seed.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace ontolab::lab {

using nlohmann::json;

#ifndef ONTOLAB_VERSION
#define ONTOLAB_VERSION "0.0.0"
#endif

inline constexpr const char* kVersion = ONTOLAB_VERSION;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;  // numbers or strings

  void add(std::vector<json> row) { rows.push_back(std::move(row)); }
};

struct Report {
  std::string experiment;
  json inputs;     // validated params with defaults, plus seed
  json results;    // experiment-specific structured results
  json residuals;  // the error measures the module contracts require
  Table table;
  double duration_seconds = 0.0;

  /// Deterministic part of the report.
  json payload() const {
    json rows = json::array();
    for (const auto& r : table.rows) rows.push_back(r);
    return {{"experiment", experiment},
            {"version", kVersion},
            {"inputs", inputs},
            {"results", results},
            {"residuals", residuals},
            {"table", {{"columns", table.columns}, {"rows", rows}}}};
  }

  json to_json() const {
    json j = payload();
    j["duration_seconds"] = duration_seconds;
    return j;
  }
};

/// %.17g round-trips every finite double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// RFC 4180 field: quoted when it holds a comma, quote, CR or LF.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string csv_cell(const json& v) {
  if (v.is_number_integer()) return v.dump();
  if (v.is_number()) return format_double(v.get<double>());
  if (v.is_string()) return csv_field(v.get<std::string>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_null()) return "";
  return csv_field(v.dump());
}

inline void write_csv(std::ostream& out, const Table& t) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << csv_field(t.columns[c]);
  out << "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_cell(row[c]);
    out << "\r\n";
  }
}

}  // namespace ontolab::lab
