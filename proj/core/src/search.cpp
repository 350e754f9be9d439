#include "perphylo/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "perphylo/compatibility.hpp"

namespace perphylo {

std::optional<Ordering> parse_ordering(std::string_view text) {
  if (text == "lex") return Ordering::Lex;
  if (text == "component-degree") return Ordering::ComponentDegree;
  return std::nullopt;
}

std::optional<Memo> parse_memo(std::string_view text) {
  if (text == "off") return Memo::Off;
  if (text == "unsafe") return Memo::Unsafe;
  return std::nullopt;
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Sat:
      return "SAT";
    case SolveStatus::Unsat:
      return "UNSAT";
    case SolveStatus::Timeout:
      return "TIMEOUT";
  }
  return "?";
}

SearchState SearchState::initial(const ExtendedMatrix& matrix) {
  return SearchState{RedBlackGraph(matrix), matrix, {}};
}

SearchState SearchState::child(std::size_t character) const {
  SearchState next = *this;
  next.graph.realize(character, next.matrix);
  next.realized.push_back(character);
  return next;
}

bool prune(const SearchState& state, bool cross_check) {
  const bool dead = find_sigma(state.graph, SigmaEdges::Red).has_value();
  if (cross_check) {
    const bool forbidden = has_forbidden_submatrix(state.matrix).has_value();
    if (forbidden != dead) {
      throw std::logic_error(std::string("prune cross-check disagreement: red Sigma ") +
                             (dead ? "present" : "absent") + ", forbidden submatrix " +
                             (forbidden ? "present" : "absent"));
    }
  }
  return dead;
}

std::vector<std::size_t> next_candidates(const SearchState& state, Ordering order) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < state.graph.character_count(); ++c) {
    if (!state.graph.is_active(c)) out.push_back(c);
  }
  if (order == Ordering::ComponentDegree) {
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> keyed;
    keyed.reserve(out.size());
    for (auto c : out) {
      const auto comp = state.graph.component_of(c);
      const auto degree = state.graph.black_neighbors(c).count();
      keyed.emplace_back(comp.species.count(), std::numeric_limits<std::size_t>::max() - degree, c);
    }
    std::sort(keyed.begin(), keyed.end());
    out.clear();
    for (const auto& k : keyed) out.push_back(std::get<2>(k));
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

enum class Result { Found, Exhausted, Timeout, Cancelled };

struct Shared {
  Clock::time_point start;
  std::atomic<std::uint64_t> nodes{0};
  // Lowest top-level branch index known to succeed.
  std::atomic<std::size_t> best_branch{std::numeric_limits<std::size_t>::max()};
};

class Searcher {
 public:
  Searcher(const SearchOptions& options, Shared& shared, std::size_t branch)
      : options_(options), shared_(shared), branch_(branch) {}

  Result explore(const SearchState& state) {
    for (auto c : next_candidates(state, options_.order)) {
      if (auto stop = interrupted()) return *stop;
      auto child = state.child(c);
      ++stats.nodes_expanded;
      shared_.nodes.fetch_add(1, std::memory_order_relaxed);
      auto result = visit(std::move(child));
      if (result != Result::Exhausted) return result;
    }
    return Result::Exhausted;
  }

  /// Handles a freshly realized state: prune, leaf test, memo, recursion.
  Result visit(SearchState child) {
    if (options_.prune && prune(child, options_.cross_check)) {
      ++stats.prunes;
      return Result::Exhausted;
    }
    if (child.realized.size() == child.graph.character_count()) {
      if (is_e_empty(child.graph)) {
        solution = child.realized;
        return Result::Found;
      }
      return Result::Exhausted;
    }
    if (options_.memo == Memo::Unsafe) {
      std::string key(child.graph.character_count(), '0');
      for (auto c : child.realized) key[c] = '1';
      if (!seen_.insert(std::move(key)).second) return Result::Exhausted;
    }
    return explore(child);
  }

  SearchStats stats;
  std::vector<std::size_t> solution;

 private:
  std::optional<Result> interrupted() const {
    if (shared_.best_branch.load(std::memory_order_relaxed) < branch_) return Result::Cancelled;
    if (options_.max_nodes && shared_.nodes.load(std::memory_order_relaxed) >= *options_.max_nodes) {
      return Result::Timeout;
    }
    if (options_.max_time_seconds) {
      const std::chrono::duration<double> elapsed = Clock::now() - shared_.start;
      if (elapsed.count() >= *options_.max_time_seconds) return Result::Timeout;
    }
    return std::nullopt;
  }

  const SearchOptions& options_;
  Shared& shared_;
  std::size_t branch_;
  std::unordered_set<std::string> seen_;
};

struct BranchResult {
  Result result = Result::Exhausted;
  std::vector<std::size_t> solution;
  SearchStats stats;
};

std::vector<BranchResult> explore_top_level(const SearchState& root,
                                            const std::vector<std::size_t>& candidates,
                                            const SearchOptions& options, Shared& shared) {
  std::vector<BranchResult> results(candidates.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const auto i = next.fetch_add(1);
      if (i >= candidates.size()) return;
      auto& slot = results[i];
      if (shared.best_branch.load() < i) {
        slot.result = Result::Cancelled;
        continue;
      }
      Searcher searcher(options, shared, i);
      auto child = root.child(candidates[i]);
      ++searcher.stats.nodes_expanded;
      shared.nodes.fetch_add(1, std::memory_order_relaxed);
      slot.result = searcher.visit(std::move(child));
      slot.solution = std::move(searcher.solution);
      slot.stats = searcher.stats;
      if (slot.result == Result::Found) {
        auto best = shared.best_branch.load();
        while (i < best && !shared.best_branch.compare_exchange_weak(best, i)) {
        }
      }
    }
  };
  const auto threads = std::min<std::size_t>(options.parallel, candidates.size());
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return results;
}

}  // namespace

SolveOutcome decide_pp(const ExtendedMatrix& matrix, const SearchOptions& options) {
  Shared shared;
  shared.start = Clock::now();
  SolveOutcome outcome;
  const auto root = SearchState::initial(matrix);

  Result result = Result::Exhausted;
  std::vector<std::size_t> solution;
  if (options.parallel <= 1) {
    Searcher searcher(options, shared, 0);
    result = searcher.explore(root);
    solution = std::move(searcher.solution);
    outcome.stats = searcher.stats;
  } else {
    const auto candidates = next_candidates(root, options.order);
    auto branches = explore_top_level(root, candidates, options, shared);
    bool timed_out = false;
    for (auto& b : branches) {
      outcome.stats.nodes_expanded += b.stats.nodes_expanded;
      outcome.stats.prunes += b.stats.prunes;
      if (b.result == Result::Found && result != Result::Found) {
        result = Result::Found;
        solution = std::move(b.solution);
      }
      timed_out = timed_out || b.result == Result::Timeout;
    }
    if (result != Result::Found && timed_out) result = Result::Timeout;
  }

  if (result == Result::Found) {
    auto replayed = replay(matrix, solution);
    if (!replayed.e_empty) throw std::logic_error("reduction does not replay to an e-empty graph");
    outcome.status = SolveStatus::Sat;
    outcome.reduction = std::move(solution);
    outcome.completion = replayed.completion();
    outcome.log = std::move(replayed.log);
  } else {
    outcome.status = result == Result::Timeout ? SolveStatus::Timeout : SolveStatus::Unsat;
  }
  outcome.stats.wall_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - shared.start).count();
  return outcome;
}

}  // namespace perphylo
