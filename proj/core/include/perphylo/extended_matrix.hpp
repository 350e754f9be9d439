#pragma once

#include <cstddef>
#include <vector>

#include "perphylo/bitset.hpp"
#include "perphylo/matrix.hpp"

namespace perphylo {

enum class Cell : unsigned char { Zero, One, Unknown };

/// State of the (c, not-c) column pair of one species.
enum class PairState : unsigned char {
  Present,     // (1,0): the species has the character
  Unknown,     // (?,?)
  Persistent,  // (1,1): gained then lost
  Absent,      // (0,0)
};

/// n x 2m matrix over {0,1,?}. Column 2j is character j, column 2j+1 its
/// negation. Stored per character as species sets, one per pair state.
class ExtendedMatrix {
 public:
  ExtendedMatrix() = default;
  explicit ExtendedMatrix(const BinaryMatrix& matrix);

  std::size_t species_count() const { return species_count_; }
  std::size_t character_count() const { return present_.size(); }
  std::size_t column_count() const { return 2 * present_.size(); }

  PairState pair(std::size_t species, std::size_t character) const;
  Cell cell(std::size_t species, std::size_t column) const;

  /// Resolves one (?,?) pair to (1,1) or (0,0). Throws std::logic_error if
  /// the pair is already resolved.
  void complete_pair(std::size_t species, std::size_t character, bool persistent);
  /// Canonical completion: every (?,?) pair of the character becomes (1,1)
  /// for species in `persistent_species` and (0,0) elsewhere.
  void complete_character(std::size_t character, const IndexSet& persistent_species);

  const IndexSet& present(std::size_t character) const { return present_[character]; }
  const IndexSet& persistent(std::size_t character) const { return persistent_[character]; }
  const IndexSet& absent(std::size_t character) const { return absent_[character]; }
  IndexSet unknown(std::size_t character) const;

  bool is_character_complete(std::size_t character) const;
  bool is_complete() const;
  std::size_t unknown_pair_count() const;

  /// Species with a 1 in the given column (2j or 2j+1). Unknown cells count
  /// as 0, so this is only meaningful for completed characters.
  IndexSet column_ones(std::size_t column) const;

  /// Collapses (1,0) to 1 and everything else to 0: recovers the source rows.
  std::vector<std::uint8_t> collapse() const;

  friend bool operator==(const ExtendedMatrix&, const ExtendedMatrix&) = default;

 private:
  std::size_t species_count_ = 0;
  std::vector<IndexSet> present_;
  std::vector<IndexSet> persistent_;
  std::vector<IndexSet> absent_;
};

inline ExtendedMatrix build_extended(const BinaryMatrix& matrix) { return ExtendedMatrix(matrix); }

/// Species that received (1,1) for one character.
struct CompletionRecord {
  std::size_t character;
  IndexSet persistent_species;

  friend bool operator==(const CompletionRecord&, const CompletionRecord&) = default;
};

/// An extended matrix without unknown cells.
class Completion {
 public:
  /// Throws std::invalid_argument if `matrix` still has unknown pairs.
  explicit Completion(ExtendedMatrix matrix);

  const ExtendedMatrix& matrix() const { return matrix_; }
  const std::vector<CompletionRecord>& provenance() const { return provenance_; }

  std::size_t species_count() const { return matrix_.species_count(); }
  std::size_t column_count() const { return matrix_.column_count(); }
  bool operator()(std::size_t species, std::size_t column) const {
    return matrix_.cell(species, column) == Cell::One;
  }
  std::vector<IndexSet> columns() const;

  friend bool operator==(const Completion&, const Completion&) = default;

 private:
  ExtendedMatrix matrix_;
  std::vector<CompletionRecord> provenance_;
};

}  // namespace perphylo
