#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>

#include "perphylo/extended_matrix.hpp"

namespace perphylo {

class OracleBudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  std::size_t max_unknown_pairs = 24;
  // Splits the assignment range into contiguous chunks; the returned witness
  // does not depend on this.
  unsigned workers = 1;
};

/// Tries every assignment of (0,0)/(1,1) to the unknown pairs and returns the
/// first, in binary-counter order, whose completion has no forbidden
/// submatrix. Unknown pairs are numbered character-major, species ascending;
/// bit i of the counter set means pair i becomes (1,1). Throws
/// OracleBudgetError when there are more unknown pairs than the cap.
std::optional<Completion> oracle_solve(const ExtendedMatrix& matrix, const OracleOptions& options = {});

}  // namespace perphylo
