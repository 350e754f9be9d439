#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace perphylo::cli {

/// One solver run, one tab-separated line.
struct RunReport {
  std::string instance;
  std::size_t species = 0;
  std::size_t characters = 0;
  std::size_t conflicts = 0;
  std::string status;  // SAT | UNSAT | TIMEOUT | ERROR
  std::uint64_t nodes = 0;
  std::uint64_t prunes = 0;
  double wall_ms = 0.0;
  std::vector<std::string> reduction;  // character labels, SAT only
  std::vector<std::string> outputs;    // files written

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

std::string report_header();
std::string format_report(const RunReport& report);
/// Throws std::runtime_error on a malformed line.
RunReport parse_report(std::string_view line);

/// Totals over one group of runs. Timeouts and errors are counted but left
/// out of the time and conflict figures.
struct Aggregate {
  std::string group;  // "n x m" or "all"
  std::size_t count = 0;
  double total_time_s = 0.0;
  double average_time_s = 0.0;
  std::size_t unsat = 0;
  std::size_t total_conflicts = 0;
  double average_conflicts = 0.0;
  std::size_t timeouts = 0;
  std::size_t errors = 0;
};

/// One row per matrix shape (ascending), then an "all" row. Empty input
/// gives no rows.
std::vector<Aggregate> aggregate(const std::vector<RunReport>& reports);
std::string aggregate_header();
std::string format_aggregate(const Aggregate& row);

}  // namespace perphylo::cli
