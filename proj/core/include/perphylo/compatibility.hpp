#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "perphylo/bitset.hpp"
#include "perphylo/extended_matrix.hpp"
#include "perphylo/matrix.hpp"

namespace perphylo {

/// True iff the two character columns show all of (0,0), (0,1), (1,0), (1,1).
bool four_gametes(const BinaryMatrix& matrix, std::size_t u, std::size_t v);

struct ConflictGraph {
  std::size_t vertex_count = 0;
  // u < v, sorted lexicographically.
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  bool has_edge(std::size_t u, std::size_t v) const;
  std::size_t edge_count() const { return edges.size(); }
};

ConflictGraph conflict_graph(const BinaryMatrix& matrix);
inline std::size_t count_conflicts(const BinaryMatrix& matrix) {
  return conflict_graph(matrix).edge_count();
}

/// Two columns and three rows inducing (1,1), (1,0), (0,1).
struct ForbiddenWitness {
  std::size_t first_column = 0;
  std::size_t second_column = 0;
  std::size_t both_row = 0;         // (1,1)
  std::size_t first_only_row = 0;   // (1,0)
  std::size_t second_only_row = 0;  // (0,1)

  /// The three rows in ascending order.
  std::array<std::size_t, 3> rows() const;

  friend bool operator==(const ForbiddenWitness&, const ForbiddenWitness&) = default;
};

/// Scans column pairs (a, b), a < b, in lexicographic order and reports the
/// first pair containing the forbidden 3x2 configuration, using the
/// lowest-index row of each configuration. Columns are species sets.
std::optional<ForbiddenWitness> has_forbidden_submatrix(std::span<const IndexSet> columns);

std::optional<ForbiddenWitness> has_forbidden_submatrix(const BinaryMatrix& matrix);
/// Column indices in the witness are extended-matrix columns (2j, 2j+1).
std::optional<ForbiddenWitness> has_forbidden_submatrix(const Completion& completion);
/// Restricted to the columns of completed characters; witness columns are
/// extended-matrix columns.
std::optional<ForbiddenWitness> has_forbidden_submatrix(const ExtendedMatrix& matrix);

}  // namespace perphylo
