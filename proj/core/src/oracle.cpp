#include "perphylo/oracle.hpp"

#include <atomic>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>


namespace perphylo {

namespace {

struct UnknownPair {
  std::size_t species;
  std::size_t character;
};

bool forbidden_free(std::span<const std::uint64_t> columns) {
  for (std::size_t a = 0; a < columns.size(); ++a) {
    const auto x = columns[a];
    if (!x) continue;
    for (std::size_t b = a + 1; b < columns.size(); ++b) {
      const auto y = columns[b];
      if ((x & y) && (x & ~y) && (y & ~x)) return false;
    }
  }
  return true;
}

/// Tests one assignment on word-sized columns. Distinct rows each need an
/// unknown pair except the all-ones row, so the pair cap keeps species well
/// under 64.
class AssignmentTester {
 public:
  AssignmentTester(const ExtendedMatrix& matrix, const std::vector<UnknownPair>& pairs)
      : matrix_(matrix), pairs_(pairs), base_(matrix.column_count(), 0) {
    for (std::size_t col = 0; col < matrix.column_count(); ++col) {
      for (auto s : to_indices(matrix.column_ones(col))) base_[col] |= std::uint64_t{1} << s;
    }
  }

  bool accepts(std::uint64_t assignment) {
    columns_ = base_;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (!((assignment >> i) & 1U)) continue;
      const auto bit = std::uint64_t{1} << pairs_[i].species;
      columns_[2 * pairs_[i].character] |= bit;
      columns_[2 * pairs_[i].character + 1] |= bit;
    }
    return forbidden_free(columns_);
  }

  Completion materialize(std::uint64_t assignment) const {
    auto completed = matrix_;
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      completed.complete_pair(pairs_[i].species, pairs_[i].character, (assignment >> i) & 1U);
    }
    return Completion(std::move(completed));
  }

 private:
  const ExtendedMatrix& matrix_;
  const std::vector<UnknownPair>& pairs_;
  std::vector<std::uint64_t> base_;
  std::vector<std::uint64_t> columns_;
};

}  // namespace

std::optional<Completion> oracle_solve(const ExtendedMatrix& matrix, const OracleOptions& options) {
  std::vector<UnknownPair> pairs;
  for (std::size_t c = 0; c < matrix.character_count(); ++c) {
    for (auto s : to_indices(matrix.unknown(c))) pairs.push_back({s, c});
  }
  if (pairs.size() > options.max_unknown_pairs || pairs.size() >= 63 || matrix.species_count() > 64) {
    throw OracleBudgetError(std::to_string(pairs.size()) + " unknown pairs exceed the cap of " +
                            std::to_string(options.max_unknown_pairs));
  }

  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  const std::uint64_t none = std::numeric_limits<std::uint64_t>::max();
  std::atomic<std::uint64_t> best{none};

  auto scan = [&](std::uint64_t begin, std::uint64_t end) {
    AssignmentTester tester(matrix, pairs);
    for (std::uint64_t a = begin; a < end; ++a) {
      if ((a & 0xFFF) == 0 && best.load(std::memory_order_relaxed) < a) return;
      if (!tester.accepts(a)) continue;
      auto current = best.load();
      while (a < current && !best.compare_exchange_weak(current, a)) {
      }
      return;
    }
  };

  const std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(options.workers, total));
  if (workers == 1) {
    scan(0, total);
  } else {
    std::vector<std::jthread> pool;
    const auto chunk = (total + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const auto begin = w * chunk;
      const auto end = std::min(total, begin + chunk);
      if (begin < end) pool.emplace_back(scan, begin, end);
    }
  }

  if (best.load() == none) return std::nullopt;
  return AssignmentTester(matrix, pairs).materialize(best.load());
}

}  // namespace perphylo
