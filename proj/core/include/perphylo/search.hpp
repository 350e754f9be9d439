#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "perphylo/extended_matrix.hpp"
#include "perphylo/red_black_graph.hpp"

namespace perphylo {

enum class Ordering : unsigned char {
  Lex,              // ascending character index
  ComponentDegree,  // smaller components first, then black degree descending
};

enum class Memo : unsigned char {
  Off,
  // Visit each set of realized characters at most once. Unsound: the reached
  // graph depends on the realization order, so this can report UNSAT for a
  // solvable matrix. SAT answers are still replay-checked.
  Unsafe,
};

struct SearchOptions {
  Ordering order = Ordering::Lex;
  std::optional<double> max_time_seconds;
  std::optional<std::uint64_t> max_nodes;
  Memo memo = Memo::Off;
  bool prune = true;
  // Also test the completed columns for a forbidden submatrix at every node
  // and throw std::logic_error if that disagrees with the red Sigma test.
  bool cross_check = false;
  unsigned parallel = 1;
};

std::optional<Ordering> parse_ordering(std::string_view text);
std::optional<Memo> parse_memo(std::string_view text);

enum class SolveStatus : unsigned char { Sat, Unsat, Timeout };
std::string_view to_string(SolveStatus status);

struct SearchStats {
  std::uint64_t nodes_expanded = 0;  // realizations performed
  std::uint64_t prunes = 0;
  double wall_ms = 0.0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Unsat;
  std::vector<std::size_t> reduction;  // SAT only
  std::optional<Completion> completion;
  RealizationLog log;
  SearchStats stats;
};

/// A node of the decision tree: the graph and matrix reached by realizing
/// `realized` in order from the fresh state.
struct SearchState {
  RedBlackGraph graph;
  ExtendedMatrix matrix;
  std::vector<std::size_t> realized;

  static SearchState initial(const ExtendedMatrix& matrix);
  /// Child state with `character` realized.
  SearchState child(std::size_t character) const;
};

/// True iff the branch is dead: the graph holds a red Sigma-graph. With
/// `cross_check`, the completed columns are also scanned for a forbidden
/// submatrix and a disagreement throws std::logic_error.
bool prune(const SearchState& state, bool cross_check = false);

/// Characters not yet active, ordered by the policy.
std::vector<std::size_t> next_candidates(const SearchState& state, Ordering order);

/// Depth-first branch and bound over character orderings. SAT outcomes carry
/// a successful reduction and the completion it induces.
SolveOutcome decide_pp(const ExtendedMatrix& matrix, const SearchOptions& options = {});

}  // namespace perphylo
