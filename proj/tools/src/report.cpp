#include "perphylo/cli/report.hpp"

#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace perphylo::cli {

namespace {

std::string join(const std::vector<std::string>& parts) {
  if (parts.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto end = text.find(sep, start);
    out.emplace_back(text.substr(start, end == std::string_view::npos ? end : end - start));
    if (end == std::string_view::npos) return out;
    start = end + 1;
  }
}

std::vector<std::string> split_list(const std::string& field) {
  if (field == "-") return {};
  return split(field, ',');
}

template <typename T>
T parse_number(const std::string& field, const char* name) {
  T value{};
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::runtime_error(std::string("report field ") + name + ": bad number '" + field + "'");
  }
  return value;
}

std::string fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

}  // namespace

std::string report_header() {
  return "instance\tn\tm\tconflicts\tstatus\tnodes\tprunes\twall_ms\treduction\toutputs";
}

std::string format_report(const RunReport& r) {
  std::ostringstream out;
  out << r.instance << '\t' << r.species << '\t' << r.characters << '\t' << r.conflicts << '\t'
      << r.status << '\t' << r.nodes << '\t' << r.prunes << '\t' << fixed(r.wall_ms, 3) << '\t'
      << join(r.reduction) << '\t' << join(r.outputs);
  return out.str();
}

RunReport parse_report(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto fields = split(line, '\t');
  if (fields.size() != 10) {
    throw std::runtime_error("report line has " + std::to_string(fields.size()) +
                             " fields, expected 10");
  }
  RunReport r;
  r.instance = fields[0];
  r.species = parse_number<std::size_t>(fields[1], "n");
  r.characters = parse_number<std::size_t>(fields[2], "m");
  r.conflicts = parse_number<std::size_t>(fields[3], "conflicts");
  r.status = fields[4];
  if (r.status != "SAT" && r.status != "UNSAT" && r.status != "TIMEOUT" && r.status != "ERROR") {
    throw std::runtime_error("report field status: unknown value '" + r.status + "'");
  }
  r.nodes = parse_number<std::uint64_t>(fields[5], "nodes");
  r.prunes = parse_number<std::uint64_t>(fields[6], "prunes");
  r.wall_ms = parse_number<double>(fields[7], "wall_ms");
  if (r.wall_ms < 0) throw std::runtime_error("report field wall_ms: negative");
  r.reduction = split_list(fields[8]);
  r.outputs = split_list(fields[9]);
  return r;
}

std::vector<Aggregate> aggregate(const std::vector<RunReport>& reports) {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<const RunReport*>> groups;
  for (const auto& r : reports) groups[{r.species, r.characters}].push_back(&r);

  auto summarize = [](std::string name, const std::vector<const RunReport*>& runs) {
    Aggregate a;
    a.group = std::move(name);
    for (const auto* r : runs) {
      if (r->status == "TIMEOUT") {
        ++a.timeouts;
        continue;
      }
      if (r->status == "ERROR") {
        ++a.errors;
        continue;
      }
      ++a.count;
      a.total_time_s += r->wall_ms / 1000.0;
      a.total_conflicts += r->conflicts;
      if (r->status == "UNSAT") ++a.unsat;
    }
    if (a.count) {
      a.average_time_s = a.total_time_s / static_cast<double>(a.count);
      a.average_conflicts = static_cast<double>(a.total_conflicts) / static_cast<double>(a.count);
    }
    return a;
  };

  std::vector<Aggregate> rows;
  std::vector<const RunReport*> all;
  for (const auto& [shape, runs] : groups) {
    rows.push_back(summarize(std::to_string(shape.first) + "x" + std::to_string(shape.second), runs));
    all.insert(all.end(), runs.begin(), runs.end());
  }
  if (!all.empty()) rows.push_back(summarize("all", all));
  return rows;
}

std::string aggregate_header() {
  return "group\tcount\ttotal_time_s\taverage_time_s\tunsat\ttotal_conflicts\taverage_conflicts\t"
         "timeouts\terrors";
}

std::string format_aggregate(const Aggregate& a) {
  std::ostringstream out;
  out << a.group << '\t' << a.count << '\t' << fixed(a.total_time_s, 3) << '\t'
      << fixed(a.average_time_s, 3) << '\t' << a.unsat << '\t' << a.total_conflicts << '\t'
      << fixed(a.average_conflicts, 2) << '\t' << a.timeouts << '\t' << a.errors;
  return out.str();
}

}  // namespace perphylo::cli
