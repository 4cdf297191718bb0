#pragma once

#include <algorithm>
#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "rankcrypt/errors.hpp"
#include "rankcrypt/harness.hpp"

namespace rankcrypt {

inline constexpr const char* kAttackCsvHeader = "instance,success,retries,elapsed_ms,failed_step";
inline constexpr const char* kBenchCsvHeader = "set,trial,seed,elapsed_ms,success";

namespace detail {
inline std::string format_ms(double ms) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline std::vector<std::string> csv_lines(const std::string& text, const char* header) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != header) throw FormatError(std::string("expected CSV header ") + header);
  std::vector<std::string> lines;
  while (std::getline(is, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

inline double parse_double(const std::string& s) {
  try {
    return std::stod(s);
  } catch (const std::exception&) {
    throw FormatError("bad number '" + s + "'");
  }
}

inline unsigned long long parse_ull(const std::string& s) {
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw FormatError("bad integer '" + s + "'");
  }
}
}  // namespace detail

inline std::string attack_csv_row(const TrialOutcome& o) {
  return std::to_string(o.trial) + "," + (o.success ? "1" : "0") + "," + std::to_string(o.retries) + "," +
         detail::format_ms(o.elapsed_ms) + "," + o.failed_step;
}

inline std::string attack_csv(const std::vector<TrialOutcome>& rows) {
  std::string out = std::string(kAttackCsvHeader) + "\n";
  for (const auto& r : rows) out += attack_csv_row(r) + "\n";
  return out;
}

/// Parses attack CSV; the seed column is not part of this schema and stays 0.
inline std::vector<TrialOutcome> parse_attack_csv(const std::string& text) {
  std::vector<TrialOutcome> out;
  for (const auto& line : detail::csv_lines(text, kAttackCsvHeader)) {
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != 5) throw FormatError("attack CSV rows have five columns");
    TrialOutcome o;
    o.trial = detail::parse_ull(cells[0]);
    o.success = cells[1] == "1";
    o.retries = detail::parse_ull(cells[2]);
    o.elapsed_ms = detail::parse_double(cells[3]);
    o.failed_step = cells[4];
    out.push_back(o);
  }
  return out;
}

struct BenchRecord {
  std::string set;
  TrialOutcome outcome;
};

/// One row per trial, then `<set>,mean,,<mean elapsed_ms>,<success rate>` per
/// set.
inline std::string bench_csv(const std::vector<BenchRecord>& rows) {
  std::string out = std::string(kBenchCsvHeader) + "\n";
  std::vector<std::string> order;
  for (const auto& r : rows) {
    out += r.set + "," + std::to_string(r.outcome.trial) + "," + std::to_string(r.outcome.seed) + "," +
           detail::format_ms(r.outcome.elapsed_ms) + "," + (r.outcome.success ? "1" : "0") + "\n";
    if (std::find(order.begin(), order.end(), r.set) == order.end()) order.push_back(r.set);
  }
  for (const auto& set : order) {
    double total = 0;
    std::size_t count = 0, ok = 0;
    for (const auto& r : rows)
      if (r.set == set) {
        total += r.outcome.elapsed_ms;
        ++count;
        ok += r.outcome.success ? 1 : 0;
      }
    out += set + ",mean,," + detail::format_ms(total / static_cast<double>(count)) + "," +
           detail::format_ms(static_cast<double>(ok) / static_cast<double>(count)) + "\n";
  }
  return out;
}

/// Trial rows of a bench CSV; mean rows are skipped.
inline std::vector<BenchRecord> parse_bench_csv(const std::string& text) {
  std::vector<BenchRecord> out;
  for (const auto& line : detail::csv_lines(text, kBenchCsvHeader)) {
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != 5) throw FormatError("bench CSV rows have five columns");
    if (cells[1] == "mean") continue;
    BenchRecord r;
    r.set = cells[0];
    r.outcome.trial = detail::parse_ull(cells[1]);
    r.outcome.seed = detail::parse_ull(cells[2]);
    r.outcome.elapsed_ms = detail::parse_double(cells[3]);
    r.outcome.success = cells[4] == "1";
    out.push_back(r);
  }
  return out;
}

}  // namespace rankcrypt
