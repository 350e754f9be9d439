#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "perphylo/compatibility.hpp"
#include "perphylo/generator.hpp"
#include "perphylo/oracle.hpp"
#include "perphylo/search.hpp"

namespace perphylo {
namespace {

SolveOutcome solve(const BinaryMatrix& m, const SearchOptions& options = {}) {
  return decide_pp(build_extended(m), options);
}

void expect_sound(const BinaryMatrix& m, const SolveOutcome& out) {
  ASSERT_EQ(out.status, SolveStatus::Sat);
  ASSERT_EQ(out.reduction.size(), m.character_count());
  const auto r = replay(build_extended(m), out.reduction);
  EXPECT_TRUE(r.e_empty);
  EXPECT_FALSE(has_forbidden_submatrix(r.completion()).has_value());
  ASSERT_TRUE(out.completion.has_value());
  EXPECT_EQ(*out.completion, r.completion());
}

TEST(DecidePp, WorkedExample) {
  const auto m = fixtures::worked_example();
  expect_sound(m, solve(m));
  const auto reference = replay(build_extended(m), fixtures::worked_example_reduction());
  EXPECT_TRUE(reference.e_empty);
}

TEST(DecidePp, ForbiddenMatrixIsSat) {
  const auto m = fixtures::forbidden();
  expect_sound(m, solve(m));
}

TEST(DecidePp, LaminarMatrix) {
  const auto m = BinaryMatrix::from_rows({{1, 0}, {1, 1}});
  const auto out = solve(m);
  expect_sound(m, out);
  const auto r = replay(build_extended(m), out.reduction);
  EXPECT_FALSE(find_sigma(r.graph).has_value());
}

TEST(DecidePp, SmallestUnsatFixture) {
  const auto m = fixtures::smallest_unsat();
  EXPECT_EQ(solve(m).status, SolveStatus::Unsat);
  EXPECT_FALSE(oracle_solve(build_extended(m)).has_value());
}

// Enumerates matrices by cell count, then rows, then bit pattern; the first
// without a completion must be the fixture.
TEST(DecidePp, SmallestUnsatFixtureIsRederived) {
  std::optional<BinaryMatrix> first;
  for (std::size_t cells = 1; cells <= 16 && !first; ++cells) {
    for (std::size_t n = 1; n <= cells && !first; ++n) {
      if (cells % n) continue;
      const auto m = cells / n;
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells) && !first; ++bits) {
        std::vector<std::uint8_t> data(cells);
        for (std::size_t i = 0; i < cells; ++i) data[i] = (bits >> i) & 1U;
        bool zero_column = false;
        for (std::size_t c = 0; c < m && !zero_column; ++c) {
          bool any = false;
          for (std::size_t s = 0; s < n; ++s) any = any || data[s * m + c];
          zero_column = !any;
        }
        if (zero_column) continue;
        BinaryMatrix candidate(n, m, std::move(data));
        if (!oracle_solve(build_extended(candidate)).has_value()) first = candidate;
      }
    }
  }
  ASSERT_TRUE(first.has_value());
  EXPECT_EQ(first->species_count(), 4u);
  EXPECT_EQ(first->character_count(), 4u);
  // Same rows up to order: the fixture lists them sorted.
  std::vector<std::vector<std::uint8_t>> got;
  for (std::size_t s = 0; s < 4; ++s) got.push_back(first->row(s));
  std::sort(got.begin(), got.end());
  std::vector<std::vector<std::uint8_t>> want;
  const auto fixture = fixtures::smallest_unsat();
  for (std::size_t s = 0; s < 4; ++s) want.push_back(fixture.row(s));
  EXPECT_EQ(got, want);
}

TEST(DecidePp, AgreesWithOracleOnAllTinyMatrices) {
  std::size_t count = 0;
  fixtures::for_each_small_matrix(3, [&](const BinaryMatrix& m) {
    ++count;
    const auto me = build_extended(m);
    const auto out = decide_pp(me, {.cross_check = true});
    ASSERT_EQ(out.status == SolveStatus::Sat, oracle_solve(me).has_value()) << format_matrix(m);
    if (out.status == SolveStatus::Sat) expect_sound(m, out);
  });
  EXPECT_EQ(count, 441u);
}

TEST(DecidePp, AgreesWithOracleOnRandomMatrices) {
  std::mt19937_64 rng(2024);
  int unsat = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto m = random_matrix(5, 4, rng);
    const auto me = build_extended(m);
    const auto out = decide_pp(me);
    ASSERT_EQ(out.status == SolveStatus::Sat, oracle_solve(me).has_value()) << format_matrix(m);
    unsat += out.status == SolveStatus::Unsat;
  }
  EXPECT_GT(unsat, 0);
}

TEST(DecidePp, PruneIsSafe) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 100; ++i) {
    const auto me = build_extended(random_matrix(6, 5, rng));
    const auto with = decide_pp(me);
    const auto without = decide_pp(me, {.prune = false});
    ASSERT_EQ(with.status, without.status);
    EXPECT_LE(with.stats.nodes_expanded, without.stats.nodes_expanded);
    EXPECT_EQ(without.stats.prunes, 0u);
  }
}

TEST(DecidePp, CrossCheckNeverDisagrees) {
  std::mt19937_64 rng(78);
  for (int i = 0; i < 200; ++i) {
    EXPECT_NO_THROW(decide_pp(build_extended(random_matrix(6, 5, rng)), {.cross_check = true}));
  }
}

TEST(DecidePp, HeuristicDoesNotChangeStatus) {
  std::mt19937_64 rng(79);
  for (int i = 0; i < 200; ++i) {
    const auto me = build_extended(random_matrix(6, 5, rng));
    EXPECT_EQ(decide_pp(me, {.order = Ordering::ComponentDegree}).status, decide_pp(me).status);
  }
}

// The reached graph is not a function of the realized set: c1 then c4 and c4
// then c1 differ, and only reductions starting with c4 succeed. A memo keyed
// on the set therefore cuts the only successful branch.
TEST(DecidePp, SetMemoIsUnsound) {
  const auto m = BinaryMatrix::from_rows({{0, 1, 1, 1}, {1, 0, 1, 1}, {0, 0, 0, 1}, {1, 1, 0, 0}});
  const auto me = build_extended(m);
  const std::vector<std::size_t> first{0, 3};
  const std::vector<std::size_t> second{3, 0};
  const auto a = replay(me, first);
  const auto b = replay(me, second);
  EXPECT_NE(a.graph, b.graph);
  EXPECT_NE(a.matrix, b.matrix);

  EXPECT_EQ(decide_pp(me).status, SolveStatus::Sat);
  EXPECT_TRUE(oracle_solve(me).has_value());
  EXPECT_EQ(decide_pp(me, {.memo = Memo::Unsafe}).status, SolveStatus::Unsat);
}

TEST(DecidePp, SetMemoAgreesOnUnsatAndNeverInventsSat) {
  std::mt19937_64 rng(79);
  for (int i = 0; i < 200; ++i) {
    const auto me = build_extended(random_matrix(6, 5, rng));
    const auto memo = decide_pp(me, {.memo = Memo::Unsafe});
    if (memo.status == SolveStatus::Sat) {
      EXPECT_EQ(decide_pp(me).status, SolveStatus::Sat);
      EXPECT_TRUE(replay(me, memo.reduction).e_empty);
    }
  }
}

TEST(DecidePp, Deterministic) {
  std::mt19937_64 rng(80);
  for (int i = 0; i < 50; ++i) {
    const auto me = build_extended(random_matrix(6, 5, rng));
    const auto a = decide_pp(me);
    const auto b = decide_pp(me);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.reduction, b.reduction);
    EXPECT_EQ(a.stats.nodes_expanded, b.stats.nodes_expanded);
    EXPECT_EQ(a.stats.prunes, b.stats.prunes);
    EXPECT_EQ(a.log, b.log);
  }
}

TEST(DecidePp, ParallelMatchesSequentialStatus) {
  std::mt19937_64 rng(81);
  for (int i = 0; i < 100; ++i) {
    const auto m = random_matrix(6, 5, rng);
    const auto me = build_extended(m);
    const auto seq = decide_pp(me);
    const auto par = decide_pp(me, {.parallel = 4});
    ASSERT_EQ(seq.status, par.status);
    if (par.status == SolveStatus::Sat) {
      expect_sound(m, par);
      // The lowest successful top-level branch wins, as in sequential order.
      EXPECT_EQ(par.reduction.front(), seq.reduction.front());
    }
  }
}

TEST(DecidePp, NodeBudgetGivesTimeout) {
  const auto me = build_extended(fixtures::smallest_unsat());
  const auto out = decide_pp(me, {.max_nodes = 2});
  EXPECT_EQ(out.status, SolveStatus::Timeout);
  EXPECT_LE(out.stats.nodes_expanded, 2u);
  EXPECT_EQ(decide_pp(me, {.max_time_seconds = 0.0}).status, SolveStatus::Timeout);
}

TEST(Prune, ExampleStates) {
  const auto cycle = build_extended(fixtures::cycle_example());
  auto state = SearchState::initial(cycle);
  EXPECT_FALSE(prune(state, true));
  for (std::size_t c = 0; c < 4; ++c) state = state.child(c);
  EXPECT_TRUE(prune(state, true));

  auto worked = SearchState::initial(build_extended(fixtures::worked_example()));
  for (auto c : fixtures::worked_example_reduction()) worked = worked.child(c);
  EXPECT_FALSE(prune(worked, true));
}

TEST(NextCandidates, Policies) {
  auto state = SearchState::initial(build_extended(fixtures::worked_example()));
  EXPECT_EQ(next_candidates(state, Ordering::Lex), (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  state = state.child(0);
  if (!state.graph.is_active(1)) state = state.child(1);
  const auto rest = next_candidates(state, Ordering::Lex);
  EXPECT_EQ(std::count(rest.begin(), rest.end(), 0), 0);
  EXPECT_EQ(std::count(rest.begin(), rest.end(), 1), 0);

  // Components {c0, c1; s0, s1} and {c2; s2}.
  const auto split = BinaryMatrix::from_rows({{1, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  const auto two = SearchState::initial(build_extended(split));
  EXPECT_EQ(next_candidates(two, Ordering::ComponentDegree), (std::vector<std::size_t>{2, 0, 1}));
}

TEST(ParseOptions, Names) {
  EXPECT_EQ(parse_ordering("lex"), Ordering::Lex);
  EXPECT_EQ(parse_ordering("component-degree"), Ordering::ComponentDegree);
  EXPECT_FALSE(parse_ordering("random").has_value());
  EXPECT_EQ(parse_memo("unsafe"), Memo::Unsafe);
  EXPECT_FALSE(parse_memo("on").has_value());
  EXPECT_EQ(to_string(SolveStatus::Timeout), "TIMEOUT");
}

}  // namespace
}  // namespace perphylo
