#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "perphylo/compatibility.hpp"
#include "perphylo/extended_matrix.hpp"
#include "perphylo/generator.hpp"
#include "perphylo/matrix.hpp"

namespace perphylo {
namespace {

TEST(LoadMatrix, ParsesForbiddenMatrix) {
  const auto m = load_matrix("3 2\n0 1\n1 0\n1 1");
  ASSERT_EQ(m.species_count(), 3u);
  ASSERT_EQ(m.character_count(), 2u);
  EXPECT_EQ(m.row(0), (std::vector<std::uint8_t>{0, 1}));
  EXPECT_EQ(m.row(1), (std::vector<std::uint8_t>{1, 0}));
  EXPECT_EQ(m.row(2), (std::vector<std::uint8_t>{1, 1}));
  EXPECT_EQ(m.species_label(0), "1");
  EXPECT_EQ(m.character_label(1), "c2");
}

TEST(LoadMatrix, MinimalInstance) {
  const auto m = load_matrix("1 1\n1");
  EXPECT_EQ(m.species_count(), 1u);
  EXPECT_TRUE(m(0, 0));
}

TEST(LoadMatrix, RejectsAllZeroColumn) {
  try {
    load_matrix("2 2\n0 0\n0 1");
    FAIL() << "expected MatrixError";
  } catch (const MatrixError& e) {
    EXPECT_EQ(e.column(), 1u);
    EXPECT_NE(std::string(e.what()).find("all-zero"), std::string::npos);
  }
}

TEST(LoadMatrix, DropsZeroColumnsOnRequest) {
  const auto m = load_matrix("2 3\n0 0 1\n0 1 1", {.drop_zero_columns = true});
  EXPECT_EQ(m.character_count(), 2u);
  EXPECT_EQ(m.character_labels(), (std::vector<std::string>{"c2", "c3"}));
}

TEST(LoadMatrix, ReportsCoordinates) {
  try {
    load_matrix("2 2\n1 0\n1 x");
    FAIL();
  } catch (const MatrixError& e) {
    EXPECT_EQ(e.row(), 2u);
    EXPECT_EQ(e.column(), 2u);
  }
  EXPECT_THROW(load_matrix("2 2\n1 0"), MatrixError);
  EXPECT_THROW(load_matrix("2 2\n1 0\n1 1 1"), MatrixError);
  EXPECT_THROW(load_matrix("2 2\n1 0\n1 1\n0 1"), MatrixError);
  EXPECT_THROW(load_matrix("# nothing"), MatrixError);
  EXPECT_THROW(load_matrix("0 2\n"), MatrixError);
}

TEST(LoadMatrix, ReadsLabelsAndComments) {
  const auto m = load_matrix(
      "# a comment\n# species: x,y\n# characters: gain,keep\n2 2\n# inline comment\n1 0\n1 1\n");
  EXPECT_EQ(m.species_labels(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(m.character_labels(), (std::vector<std::string>{"gain", "keep"}));
  EXPECT_THROW(load_matrix("# species: x,x\n2 1\n1\n0"), MatrixError);
  EXPECT_THROW(load_matrix("# characters: a+b\n1 1\n1"), MatrixError);
  EXPECT_THROW(load_matrix("# species: x\n2 1\n1\n0"), MatrixError);
}

TEST(LoadMatrix, CollapsesDuplicateRows) {
  const auto m = load_matrix("# species: p,q,r\n3 2\n1 0\n0 1\n1 0\n");
  ASSERT_EQ(m.species_count(), 2u);
  EXPECT_EQ(m.members(0), (std::vector<std::string>{"p", "r"}));
  EXPECT_EQ(m.original_row_count(), 3u);
  EXPECT_EQ(m.find_species("r"), 0u);
  // Writing re-expands the collapsed rows.
  const auto again = load_matrix(format_matrix(m));
  EXPECT_EQ(again, m);
}

TEST(BuildExtended, WorkedExampleRow) {
  const auto me = build_extended(fixtures::worked_example());
  // Row 2 is (0,1,0,0,0).
  std::vector<Cell> row;
  for (std::size_t col = 0; col < me.column_count(); ++col) row.push_back(me.cell(1, col));
  const auto U = Cell::Unknown;
  EXPECT_EQ(row, (std::vector<Cell>{U, U, Cell::One, Cell::Zero, U, U, U, U, U, U}));
}

TEST(BuildExtended, AllOnesAndSingleton) {
  const auto me = build_extended(BinaryMatrix::from_rows({{1, 1, 1}}));
  for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(me.pair(0, c), PairState::Present);
  const auto one = build_extended(BinaryMatrix::from_rows({{1}}));
  EXPECT_EQ(one.cell(0, 0), Cell::One);
  EXPECT_EQ(one.cell(0, 1), Cell::Zero);
  EXPECT_TRUE(one.is_complete());
}

TEST(BuildExtended, RoundTripsThroughCollapse) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> dim(1, 7);
    const auto m = random_matrix(dim(rng), dim(rng), rng);
    const auto me = build_extended(m);
    std::vector<std::uint8_t> cells;
    for (std::size_t s = 0; s < m.species_count(); ++s) {
      auto r = m.row(s);
      cells.insert(cells.end(), r.begin(), r.end());
    }
    EXPECT_EQ(me.collapse(), cells);
    EXPECT_EQ(me.unknown_pair_count(), m.species_count() * m.character_count() - [&] {
      std::size_t ones = 0;
      for (auto v : cells) ones += v;
      return ones;
    }());
  }
}

TEST(ExtendedMatrix, CompletionResolvesPairsTogether) {
  auto me = build_extended(fixtures::forbidden());
  EXPECT_THROW(me.complete_pair(1, 0, true), std::logic_error);  // (1,0) already fixed
  me.complete_pair(0, 0, true);
  EXPECT_EQ(me.pair(0, 0), PairState::Persistent);
  EXPECT_THROW(me.complete_pair(0, 0, false), std::logic_error);
  EXPECT_THROW(Completion{me}, std::invalid_argument);
  me.complete_character(1, IndexSet(3));
  const Completion done(me);
  EXPECT_EQ(done.provenance().size(), 2u);
  EXPECT_EQ(to_indices(done.provenance()[0].persistent_species), (std::vector<std::size_t>{0}));
  for (std::size_t c = 0; c < 2; ++c) {
    EXPECT_TRUE(done.matrix().column_ones(2 * c + 1).is_subset_of(done.matrix().column_ones(2 * c)));
  }
}

TEST(FourGametes, CycleExample) {
  const auto m = fixtures::cycle_example();
  // Rows restricted to (c1,c2): (1,1),(0,1),(0,0),(1,0).
  EXPECT_TRUE(four_gametes(m, 0, 1));
  // (c1,c3): (1,0),(0,1),(0,1),(1,0).
  EXPECT_FALSE(four_gametes(m, 0, 2));
  const auto single = BinaryMatrix::from_rows({{1, 1}});
  EXPECT_FALSE(four_gametes(single, 0, 1));
}

TEST(ConflictGraph, CycleExampleIsFourCycle) {
  const auto g = conflict_graph(fixtures::cycle_example());
  using E = std::pair<std::size_t, std::size_t>;
  EXPECT_EQ(g.edges, (std::vector<E>{{0, 1}, {0, 3}, {1, 2}, {2, 3}}));
  EXPECT_TRUE(g.has_edge(3, 0));
  EXPECT_EQ(count_conflicts(fixtures::cycle_example()), 4u);
}

TEST(ConflictGraph, ForbiddenMatrixHasNoEdgesButWitness) {
  EXPECT_EQ(conflict_graph(fixtures::forbidden()).edge_count(), 0u);
  const auto w = has_forbidden_submatrix(fixtures::forbidden());
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->first_column, 0u);
  EXPECT_EQ(w->second_column, 1u);
  EXPECT_EQ(w->rows(), (std::array<std::size_t, 3>{0, 1, 2}));
  EXPECT_EQ(w->both_row, 2u);
  EXPECT_EQ(count_conflicts(BinaryMatrix::from_rows({{1}, {0}})), 0u);
}

TEST(ForbiddenSubmatrix, WorkedCompletionIsClean) {
  const auto rows = fixtures::worked_example_completion();
  std::vector<IndexSet> columns(10, IndexSet(5));
  for (std::size_t s = 0; s < 5; ++s) {
    for (std::size_t c = 0; c < 10; ++c) columns[c][s] = rows[s][c] == 1;
  }
  EXPECT_FALSE(has_forbidden_submatrix(std::span<const IndexSet>(columns)).has_value());
}

TEST(ForbiddenSubmatrix, TwoRowsNeverForbidden) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    EXPECT_FALSE(has_forbidden_submatrix(random_matrix(2, 6, rng)).has_value());
  }
}

// O(n^3 m^2) scan over ordered row triples.
bool brute_force_forbidden(const std::vector<IndexSet>& columns, std::size_t rows) {
  for (std::size_t a = 0; a < columns.size(); ++a) {
    for (std::size_t b = 0; b < columns.size(); ++b) {
      if (a == b) continue;
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < rows; ++j) {
          for (std::size_t k = 0; k < rows; ++k) {
            if (columns[a][i] && columns[b][i] && columns[a][j] && !columns[b][j] &&
                !columns[a][k] && columns[b][k]) {
              return true;
            }
          }
        }
      }
    }
  }
  return false;
}

TEST(ForbiddenSubmatrix, AgreesWithBruteForceOnAllSmallMatrices) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t m = 1; m <= 4; ++m) {
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (n * m)); ++bits) {
        std::vector<IndexSet> columns(m, IndexSet(n));
        for (std::size_t i = 0; i < n * m; ++i) columns[i % m][i / m] = (bits >> i) & 1U;
        const auto w = has_forbidden_submatrix(std::span<const IndexSet>(columns));
        ASSERT_EQ(w.has_value(), brute_force_forbidden(columns, n)) << n << "x" << m << " " << bits;
        if (w) {
          EXPECT_TRUE(columns[w->first_column][w->both_row] && columns[w->second_column][w->both_row]);
          EXPECT_TRUE(columns[w->first_column][w->first_only_row] &&
                      !columns[w->second_column][w->first_only_row]);
          EXPECT_TRUE(!columns[w->first_column][w->second_only_row] &&
                      columns[w->second_column][w->second_only_row]);
        }
      }
    }
  }
}

}  // namespace
}  // namespace perphylo
