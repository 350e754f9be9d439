#include "perphylo/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <mutex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "perphylo/cli/report.hpp"
#include "perphylo/perphylo.hpp"

namespace perphylo::cli {

namespace {

namespace fs = std::filesystem;

/// Failure with a fixed exit code, reported on the error stream.
struct CommandError : std::runtime_error {
  CommandError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
  int code;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError(kExitError, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) throw CommandError(kExitError, "cannot write " + path);
}

BinaryMatrix load(const std::string& path, bool drop_zero_columns) {
  const auto text = read_file(path);
  try {
    return load_matrix(text, {.drop_zero_columns = drop_zero_columns});
  } catch (const MatrixError& e) {
    throw CommandError(kExitError, path + ": " + e.what());
  }
}

std::string format_completion(const Completion& completion) {
  std::ostringstream out;
  out << completion.species_count() << ' ' << completion.column_count() << '\n';
  for (std::size_t s = 0; s < completion.species_count(); ++s) {
    for (std::size_t col = 0; col < completion.column_count(); ++col) {
      out << (col ? " " : "") << (completion(s, col) ? 1 : 0);
    }
    out << '\n';
  }
  return out.str();
}

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::Sat:
      return kExitSat;
    case SolveStatus::Unsat:
      return kExitUnsat;
    case SolveStatus::Timeout:
      return kExitTimeout;
  }
  return kExitError;
}

struct SearchFlags {
  std::string order = "lex";
  std::optional<double> max_time;
  std::optional<std::uint64_t> max_nodes;
  std::string memo = "off";
  unsigned parallel = 1;
  bool cross_check = false;

  void add_to(CLI::App& app) {
    app.add_option("--order", order, "Branch order: lex or component-degree")
        ->check(CLI::IsMember({"lex", "component-degree"}));
    app.add_option("--max-time", max_time, "Wall-clock budget in seconds")->check(CLI::NonNegativeNumber);
    app.add_option("--max-nodes", max_nodes, "Budget of realizations");
    app.add_option("--memo", memo, "off, or unsafe (set-keyed memo; can miss solutions)")
        ->check(CLI::IsMember({"off", "unsafe"}));
    app.add_option("--parallel", parallel, "Threads over top-level branches")->check(CLI::PositiveNumber);
    app.add_flag("--cross-check", cross_check, "Compare the prune against a forbidden-submatrix scan");
  }

  SearchOptions options() const {
    SearchOptions o;
    o.order = *parse_ordering(order);
    o.memo = *parse_memo(memo);
    o.max_time_seconds = max_time;
    o.max_nodes = max_nodes;
    o.parallel = parallel;
    o.cross_check = cross_check;
    return o;
  }
};

RunReport base_report(const std::string& instance, const BinaryMatrix& matrix) {
  RunReport r;
  r.instance = instance;
  r.species = matrix.original_row_count();
  r.characters = matrix.character_count();
  r.conflicts = count_conflicts(matrix);
  return r;
}

void fill_from_outcome(RunReport& r, const SolveOutcome& outcome, const BinaryMatrix& matrix) {
  r.status = std::string(to_string(outcome.status));
  r.nodes = outcome.stats.nodes_expanded;
  r.prunes = outcome.stats.prunes;
  r.wall_ms = outcome.stats.wall_ms;
  for (auto c : outcome.reduction) r.reduction.push_back(matrix.character_label(c));
}

// ---- solve ----

struct SolveArgs {
  std::string matrix;
  std::string newick;
  std::string edgelist;
  std::string trace;
  bool drop_zero_columns = false;
  SearchFlags search;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const auto matrix = load(a.matrix, a.drop_zero_columns);
  const auto outcome = decide_pp(build_extended(matrix), a.search.options());
  auto report = base_report(a.matrix, matrix);
  fill_from_outcome(report, outcome, matrix);

  if (outcome.status == SolveStatus::Sat) {
    const auto tree = build_ppp_tree(*outcome.completion, matrix);
    const auto verdict = verify_ppp(tree, matrix);
    if (!verdict.passed()) {
      throw CommandError(kExitError, "internal error: built tree fails property " +
                                         std::to_string(verdict.violations.front().property) + ": " +
                                         verdict.violations.front().message);
    }
    for (const auto& note : verdict.notes) err << "note: " << note << '\n';
    if (!a.newick.empty()) {
      write_file(a.newick, to_newick(tree) + "\n");
      report.outputs.push_back(a.newick);
    }
    if (!a.edgelist.empty()) {
      write_file(a.edgelist, to_edgelist(tree));
      report.outputs.push_back(a.edgelist);
    }
    if (!a.trace.empty()) {
      write_file(a.trace, outcome.log.to_trace(matrix.character_labels(), matrix.species_labels()));
      report.outputs.push_back(a.trace);
    }
  }
  out << report_header() << '\n' << format_report(report) << '\n';
  return exit_code(outcome.status);
}

// ---- check ----

struct CheckArgs {
  std::string matrix;
  std::string tree;
  std::string trace;
  bool drop_zero_columns = false;
};

int fail_check(std::ostream& err, const std::string& message) {
  err << "check failed: " << message << '\n';
  return 1;
}

int report_verdict(const VerificationReport& verdict, std::ostream& err) {
  for (const auto& note : verdict.notes) err << "note: " << note << '\n';
  if (verdict.passed()) return 0;
  const auto& first = verdict.violations.front();
  return fail_check(err, "property " + std::to_string(first.property) + ": " + first.message);
}

int check_tree(const BinaryMatrix& matrix, const std::string& path, std::ostream& err) {
  const auto text = read_file(path);
  PPPTree tree;
  try {
    tree = parse_edgelist(text, matrix.character_labels());
  } catch (const std::runtime_error& e) {
    return fail_check(err, path + ": " + e.what());
  }
  return report_verdict(verify_ppp(tree, matrix), err);
}

int check_trace(const BinaryMatrix& matrix, const std::string& path, std::ostream& err) {
  std::vector<TraceLine> lines;
  try {
    lines = parse_trace(read_file(path));
  } catch (const std::runtime_error& e) {
    return fail_check(err, path + ": " + e.what());
  }

  std::vector<std::size_t> sequence;
  std::set<std::size_t> seen;
  bool full_log = false;
  for (const auto& line : lines) {
    if (line.verb != "realize") {
      full_log = true;
      continue;
    }
    const auto c = matrix.find_character(line.label);
    if (!c) return fail_check(err, "line " + std::to_string(line.line_number) + ": unknown character '" + line.label + "'");
    if (!seen.insert(*c).second) {
      return fail_check(err, "line " + std::to_string(line.line_number) +
                                 ": duplicate realization of character " + line.label);
    }
    sequence.push_back(*c);
  }
  for (std::size_t c = 0; c < matrix.character_count(); ++c) {
    if (!seen.count(c)) return fail_check(err, "character " + matrix.character_label(c) + " is never realized");
  }

  const auto result = replay(build_extended(matrix), sequence);
  if (!result.e_empty) {
    return fail_check(err, "not a successful reduction: " + std::to_string(result.graph.edge_count()) +
                               " edges remain");
  }
  if (full_log) {
    // Free and species lines must match the replayed events exactly.
    const auto expected = parse_trace(result.log.to_trace(matrix.character_labels(), matrix.species_labels()));
    for (std::size_t i = 0; i < std::max(expected.size(), lines.size()); ++i) {
      if (i >= lines.size() || i >= expected.size() || lines[i].verb != expected[i].verb ||
          lines[i].label != expected[i].label) {
        const auto want = i < expected.size() ? expected[i].verb + " " + expected[i].label : "end of trace";
        return fail_check(err, "event " + std::to_string(i + 1) + " differs from replay, expected '" + want + "'");
      }
    }
  }
  return report_verdict(verify_ppp(build_ppp_tree(result.completion(), matrix), matrix), err);
}

int cmd_check(const CheckArgs& a, std::ostream&, std::ostream& err) {
  if (a.tree.empty() == a.trace.empty()) throw CommandError(kExitUsage, "check needs --tree or --trace");
  const auto matrix = load(a.matrix, a.drop_zero_columns);
  return a.tree.empty() ? check_trace(matrix, a.trace, err) : check_tree(matrix, a.tree, err);
}

// ---- gen ----

struct GenArgs {
  GeneratorParams params;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string tree;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("PERPHYLO_SEED");
  if (!env || !*env) return 1;
  std::uint64_t value = 0;
  const auto* end = env + std::char_traits<char>::length(env);
  const auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end) {
    throw CommandError(kExitError, std::string("PERPHYLO_SEED is not an unsigned integer: ") + env);
  }
  return value;
}

int cmd_gen(GenArgs a, std::ostream& out, std::ostream&) {
  a.params.seed = a.seed ? *a.seed : default_seed();
  const auto inst = [&] {
    try {
      return generate_instance(a.params);
    } catch (const GeneratorError& e) {
      throw CommandError(kExitError, std::string(e.what()) + " (see --allow-duplicates)");
    } catch (const std::exception& e) {
      throw CommandError(kExitError, e.what());
    }
  }();
  write_file(a.out, format_matrix(inst.matrix));
  out << a.out << '\n';
  if (!a.tree.empty()) {
    write_file(a.tree, to_edgelist(inst.tree));
    out << a.tree << '\n';
  }
  return 0;
}

// ---- oracle ----

struct OracleArgs {
  std::string matrix;
  std::size_t max_pairs = 24;
  unsigned workers = 1;
  std::string completion;
  bool compare = false;
  bool drop_zero_columns = false;
};

int cmd_oracle(const OracleArgs& a, std::ostream& out, std::ostream& err) {
  const auto matrix = load(a.matrix, a.drop_zero_columns);
  const auto me = build_extended(matrix);
  auto report = base_report(a.matrix, matrix);
  const auto start = std::chrono::steady_clock::now();
  std::optional<Completion> found;
  try {
    found = oracle_solve(me, {.max_unknown_pairs = a.max_pairs, .workers = a.workers});
  } catch (const OracleBudgetError& e) {
    throw CommandError(kExitError, e.what());
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report.status = found ? "SAT" : "UNSAT";
  if (found && !a.completion.empty()) {
    write_file(a.completion, format_completion(*found));
    report.outputs.push_back(a.completion);
  }
  if (a.compare) {
    const auto solved = decide_pp(me);
    if ((solved.status == SolveStatus::Sat) != found.has_value()) {
      err << "disagreement: oracle " << report.status << ", search " << to_string(solved.status) << '\n';
      out << report_header() << '\n' << format_report(report) << '\n';
      return kExitError + 1;
    }
  }
  out << report_header() << '\n' << format_report(report) << '\n';
  return found ? kExitSat : kExitUnsat;
}

// ---- bench ----

struct BenchArgs {
  std::string dir;
  double max_time = 300.0;
  std::optional<std::uint64_t> max_nodes;
  std::string order = "lex";
  unsigned jobs = 1;
  std::string out;
};

RunReport bench_one(const std::string& path, const BenchArgs& a, std::ostream& err, std::mutex& err_lock) {
  RunReport report;
  report.instance = path;
  try {
    const auto matrix = load(path, false);
    report = base_report(path, matrix);
    SearchOptions options;
    options.order = *parse_ordering(a.order);
    options.max_time_seconds = a.max_time;
    options.max_nodes = a.max_nodes;
    fill_from_outcome(report, decide_pp(build_extended(matrix), options), matrix);
  } catch (const std::exception& e) {
    report.status = "ERROR";
    std::lock_guard lock(err_lock);
    err << path << ": " << e.what() << '\n';
  }
  return report;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  std::error_code ec;
  if (!fs::is_directory(a.dir, ec)) throw CommandError(kExitError, a.dir + " is not a directory");
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(a.dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".matrix") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());

  std::vector<RunReport> reports(files.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_lock;
  auto worker = [&] {
    for (auto i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1)) {
      reports[i] = bench_one(files[i], a, err, err_lock);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < a.jobs; ++t) pool.emplace_back(worker);
    worker();
  }

  std::ostringstream text;
  text << report_header() << '\n';
  for (const auto& r : reports) text << format_report(r) << '\n';
  text << '\n' << aggregate_header() << '\n';
  for (const auto& row : aggregate(reports)) text << format_aggregate(row) << '\n';
  if (a.out.empty()) {
    out << text.str();
  } else {
    write_file(a.out, text.str());
    out << a.out << '\n';
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Persistent perfect phylogeny solver", "perphylo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "perphylo 0.1.0");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Decide a matrix and write the tree");
  solve_cmd->add_option("matrix", solve.matrix, "Matrix file")->required();
  solve_cmd->add_option("--newick", solve.newick, "Write the tree in Newick form");
  solve_cmd->add_option("--edgelist", solve.edgelist, "Write the tree as an edge list");
  solve_cmd->add_option("--trace", solve.trace, "Write the realization trace");
  solve_cmd->add_flag("--drop-zero-columns", solve.drop_zero_columns, "Strip all-zero characters");
  solve.search.add_to(*solve_cmd);

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Verify a tree or a reduction trace against a matrix");
  check_cmd->add_option("matrix", check.matrix, "Matrix file")->required();
  auto* tree_opt = check_cmd->add_option("--tree", check.tree, "Edge-list tree file");
  auto* trace_opt = check_cmd->add_option("--trace", check.trace, "Realization trace file");
  tree_opt->excludes(trace_opt);
  check_cmd->add_flag("--drop-zero-columns", check.drop_zero_columns, "Strip all-zero characters");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--species", gen.params.species, "Number of species")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--chars", gen.params.characters, "Number of characters")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--loss-prob", gen.params.loss_probability, "Probability of a loss per character")
      ->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--seed", gen.seed, "Random seed (default: PERPHYLO_SEED, else 1)");
  gen_cmd->add_option("--max-retries", gen.params.max_retries, "Redraw budget");
  gen_cmd->add_flag("--allow-duplicates", gen.params.allow_duplicate_rows, "Keep repeated rows");
  gen_cmd->add_option("--out", gen.out, "Matrix output file")->required();
  gen_cmd->add_option("--with-tree", gen.tree, "Also write the generating tree as an edge list");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Decide by exhaustive completion search");
  oracle_cmd->add_option("matrix", oracle.matrix, "Matrix file")->required();
  oracle_cmd->add_option("--max-pairs", oracle.max_pairs, "Cap on unknown pairs");
  oracle_cmd->add_option("--workers", oracle.workers, "Threads")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--completion", oracle.completion, "Write the first accepted completion");
  oracle_cmd->add_flag("--compare", oracle.compare, "Also run the search and fail on disagreement");
  oracle_cmd->add_flag("--drop-zero-columns", oracle.drop_zero_columns, "Strip all-zero characters");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Solve every .matrix file in a directory");
  bench_cmd->add_option("dir", bench.dir, "Directory of matrix files")->required();
  bench_cmd->add_option("--max-time", bench.max_time, "Per-instance budget in seconds")
      ->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--max-nodes", bench.max_nodes, "Per-instance node budget");
  bench_cmd->add_option("--order", bench.order, "Branch order")->check(CLI::IsMember({"lex", "component-degree"}));
  bench_cmd->add_option("--jobs", bench.jobs, "Instances solved in parallel")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", bench.out, "Report file (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "perphylo 0.1.0\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve, out, err);
    if (check_cmd->parsed()) return cmd_check(check, out, err);
    if (gen_cmd->parsed()) return cmd_gen(gen, out, err);
    if (oracle_cmd->parsed()) return cmd_oracle(oracle, out, err);
    if (bench_cmd->parsed()) return cmd_bench(bench, out, err);
  } catch (const CommandError& e) {
    err << "error: " << e.what() << '\n';
    return e.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace perphylo::cli
