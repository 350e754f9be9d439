#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "perphylo/matrix.hpp"
#include "perphylo/phylogeny.hpp"

namespace perphylo {

class GeneratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeneratorParams {
  std::size_t species = 10;
  std::size_t characters = 5;
  double loss_probability = 0.5;
  std::uint64_t seed = 1;
  std::size_t max_retries = 1000;
  // Keep instances whose rows repeat. A persistent tree over m characters
  // has at most 2m+1 distinct leaf vectors, so large n needs this.
  bool allow_duplicate_rows = false;
};

struct GeneratedInstance {
  BinaryMatrix matrix;
  PPPTree tree;  // leaves named s1..sn in pre-order
  std::size_t attempts = 0;
};

/// Grows a random rooted tree by uniform attachment until it has `species`
/// leaves, places one gain per character on a uniform edge and, with the
/// loss probability, one loss on an edge strictly below it along a random
/// downward path. Leaf vectors become the rows. Attempts with an all-zero
/// column (or repeated rows, unless allowed) are redrawn.
GeneratedInstance generate_instance(const GeneratorParams& params);

/// Uniform random 0/1 matrix; all-zero columns are redrawn.
BinaryMatrix random_matrix(std::size_t species, std::size_t characters, std::mt19937_64& rng,
                           double density = 0.5);

}  // namespace perphylo
