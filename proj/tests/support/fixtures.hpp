#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "perphylo/perphylo.hpp"

namespace perphylo::fixtures {

inline BinaryMatrix labeled(const std::vector<std::vector<int>>& rows,
                            std::vector<std::string> characters) {
  std::vector<std::uint8_t> cells;
  for (const auto& r : rows) {
    for (int v : r) cells.push_back(static_cast<std::uint8_t>(v));
  }
  const auto width = characters.size();
  return BinaryMatrix(rows.size(), width, std::move(cells), {}, std::move(characters));
}

/// Rows (0,1), (1,0), (1,1): no pp tree, but a p-pp tree with one loss.
inline BinaryMatrix forbidden() { return labeled({{0, 1}, {1, 0}, {1, 1}}, {"a", "b"}); }

/// 5x5 worked example; species 1..5, characters a..e.
inline BinaryMatrix worked_example() {
  return labeled({{0, 0, 1, 1, 0},
                  {0, 1, 0, 0, 0},
                  {1, 0, 0, 0, 0},
                  {1, 0, 0, 0, 1},
                  {1, 1, 1, 0, 0}},
                 {"a", "b", "c", "d", "e"});
}

/// Completion of the worked example induced by realizing b, a, c, d, e.
/// Columns a, not-a, b, not-b, ..., e, not-e.
inline std::vector<std::vector<int>> worked_example_completion() {
  return {{1, 1, 1, 1, 1, 0, 1, 0, 0, 0},
          {0, 0, 1, 0, 0, 0, 0, 0, 0, 0},
          {1, 0, 1, 1, 1, 1, 0, 0, 0, 0},
          {1, 0, 1, 1, 1, 1, 0, 0, 1, 0},
          {1, 0, 1, 0, 1, 0, 0, 0, 0, 0}};
}

/// The reduction b, a, c, d, e as character indices.
inline std::vector<std::size_t> worked_example_reduction() { return {1, 0, 2, 3, 4}; }

/// Rows 1000, 1100, 0101, 0011 over characters a..d.
inline BinaryMatrix four_species_example() {
  return labeled({{1, 0, 0, 0}, {1, 1, 0, 0}, {0, 1, 0, 1}, {0, 0, 1, 1}}, {"a", "b", "c", "d"});
}

/// Rows 1100, 0110, 0011, 1001 over c1..c4: a 4-cycle of conflicts.
inline BinaryMatrix cycle_example() {
  return BinaryMatrix::from_rows({{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {1, 0, 0, 1}});
}

/// Completion of the cycle example after realizing c1, c2, c3, c4.
inline std::vector<std::vector<int>> cycle_example_completion() {
  return {{1, 0, 1, 0, 0, 0, 0, 0},
          {1, 1, 1, 0, 1, 0, 1, 1},
          {1, 1, 1, 1, 1, 0, 1, 0},
          {1, 0, 1, 1, 1, 1, 1, 0}};
}

/// Smallest matrix (by cell count, then rows) without a p-pp tree, found by
/// enumerating every matrix in that order through the completion oracle.
/// unsat_fixture_test re-derives it.
inline BinaryMatrix smallest_unsat() {
  return BinaryMatrix::from_rows({{0, 0, 1, 1}, {0, 1, 0, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}});
}

inline std::vector<std::vector<int>> as_rows(const Completion& completion) {
  std::vector<std::vector<int>> rows(completion.species_count());
  for (std::size_t s = 0; s < completion.species_count(); ++s) {
    for (std::size_t col = 0; col < completion.column_count(); ++col) {
      rows[s].push_back(completion(s, col) ? 1 : 0);
    }
  }
  return rows;
}

/// Every zero-column-free n x m matrix, n, m <= limit, in a fixed order.
template <typename Visit>
void for_each_small_matrix(std::size_t limit, Visit visit) {
  for (std::size_t n = 1; n <= limit; ++n) {
    for (std::size_t m = 1; m <= limit; ++m) {
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * m)); ++bits) {
        std::vector<std::uint8_t> cells(n * m);
        bool zero_column = false;
        for (std::size_t i = 0; i < n * m; ++i) cells[i] = (bits >> i) & 1U;
        for (std::size_t c = 0; c < m && !zero_column; ++c) {
          bool any = false;
          for (std::size_t s = 0; s < n; ++s) any = any || cells[s * m + c];
          zero_column = !any;
        }
        if (zero_column) continue;
        visit(BinaryMatrix(n, m, std::move(cells)));
      }
    }
  }
}

}  // namespace perphylo::fixtures
