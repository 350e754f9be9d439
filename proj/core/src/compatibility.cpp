#include "perphylo/compatibility.hpp"

#include <algorithm>

namespace perphylo {

bool four_gametes(const BinaryMatrix& matrix, std::size_t u, std::size_t v) {
  const auto& a = matrix.column(u);
  const auto& b = matrix.column(v);
  return a.intersects(b) && !a.is_subset_of(b) && !b.is_subset_of(a) && !(a | b).all();
}

bool ConflictGraph::has_edge(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

ConflictGraph conflict_graph(const BinaryMatrix& matrix) {
  ConflictGraph graph;
  graph.vertex_count = matrix.character_count();
  for (std::size_t u = 0; u < graph.vertex_count; ++u) {
    for (std::size_t v = u + 1; v < graph.vertex_count; ++v) {
      if (four_gametes(matrix, u, v)) graph.edges.emplace_back(u, v);
    }
  }
  return graph;
}

std::array<std::size_t, 3> ForbiddenWitness::rows() const {
  std::array<std::size_t, 3> out{both_row, first_only_row, second_only_row};
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<ForbiddenWitness> has_forbidden_submatrix(std::span<const IndexSet> columns) {
  for (std::size_t a = 0; a < columns.size(); ++a) {
    for (std::size_t b = a + 1; b < columns.size(); ++b) {
      const auto& x = columns[a];
      const auto& y = columns[b];
      if (!x.intersects(y) || x.is_subset_of(y) || y.is_subset_of(x)) continue;
      ForbiddenWitness w;
      w.first_column = a;
      w.second_column = b;
      w.both_row = (x & y).find_first();
      w.first_only_row = (x - y).find_first();
      w.second_only_row = (y - x).find_first();
      return w;
    }
  }
  return std::nullopt;
}

std::optional<ForbiddenWitness> has_forbidden_submatrix(const BinaryMatrix& matrix) {
  std::vector<IndexSet> columns;
  for (std::size_t c = 0; c < matrix.character_count(); ++c) columns.push_back(matrix.column(c));
  return has_forbidden_submatrix(std::span<const IndexSet>(columns));
}

std::optional<ForbiddenWitness> has_forbidden_submatrix(const Completion& completion) {
  const auto columns = completion.columns();
  return has_forbidden_submatrix(std::span<const IndexSet>(columns));
}

std::optional<ForbiddenWitness> has_forbidden_submatrix(const ExtendedMatrix& matrix) {
  std::vector<IndexSet> columns;
  std::vector<std::size_t> ids;
  for (std::size_t c = 0; c < matrix.character_count(); ++c) {
    if (!matrix.is_character_complete(c)) continue;
    for (std::size_t col : {2 * c, 2 * c + 1}) {
      columns.push_back(matrix.column_ones(col));
      ids.push_back(col);
    }
  }
  auto witness = has_forbidden_submatrix(std::span<const IndexSet>(columns));
  if (witness) {
    witness->first_column = ids[witness->first_column];
    witness->second_column = ids[witness->second_column];
  }
  return witness;
}

}  // namespace perphylo
