#include "perphylo/extended_matrix.hpp"

#include <stdexcept>
#include <string>

namespace perphylo {

ExtendedMatrix::ExtendedMatrix(const BinaryMatrix& matrix)
    : species_count_(matrix.species_count()) {
  const auto n = matrix.species_count();
  for (std::size_t c = 0; c < matrix.character_count(); ++c) {
    present_.push_back(matrix.column(c));
    persistent_.emplace_back(n);
    absent_.emplace_back(n);
  }
}

PairState ExtendedMatrix::pair(std::size_t species, std::size_t character) const {
  if (present_[character].test(species)) return PairState::Present;
  if (persistent_[character].test(species)) return PairState::Persistent;
  if (absent_[character].test(species)) return PairState::Absent;
  return PairState::Unknown;
}

Cell ExtendedMatrix::cell(std::size_t species, std::size_t column) const {
  const auto state = pair(species, column / 2);
  const bool negated = column % 2 == 1;
  switch (state) {
    case PairState::Present:
      return negated ? Cell::Zero : Cell::One;
    case PairState::Persistent:
      return Cell::One;
    case PairState::Absent:
      return Cell::Zero;
    case PairState::Unknown:
      break;
  }
  return Cell::Unknown;
}

void ExtendedMatrix::complete_pair(std::size_t species, std::size_t character, bool persistent) {
  if (pair(species, character) != PairState::Unknown) {
    throw std::logic_error("pair (species " + std::to_string(species) + ", character " +
                           std::to_string(character) + ") is already resolved");
  }
  (persistent ? persistent_ : absent_)[character].set(species);
}

void ExtendedMatrix::complete_character(std::size_t character, const IndexSet& persistent_species) {
  const auto open = unknown(character);
  persistent_[character] |= open & persistent_species;
  absent_[character] |= open - persistent_species;
}

IndexSet ExtendedMatrix::unknown(std::size_t character) const {
  return ~(present_[character] | persistent_[character] | absent_[character]);
}

bool ExtendedMatrix::is_character_complete(std::size_t character) const {
  return (present_[character] | persistent_[character] | absent_[character]).all();
}

bool ExtendedMatrix::is_complete() const {
  for (std::size_t c = 0; c < character_count(); ++c) {
    if (!is_character_complete(c)) return false;
  }
  return true;
}

std::size_t ExtendedMatrix::unknown_pair_count() const {
  std::size_t total = 0;
  for (std::size_t c = 0; c < character_count(); ++c) total += unknown(c).count();
  return total;
}

IndexSet ExtendedMatrix::column_ones(std::size_t column) const {
  const auto c = column / 2;
  return column % 2 == 0 ? present_[c] | persistent_[c] : persistent_[c];
}

std::vector<std::uint8_t> ExtendedMatrix::collapse() const {
  const auto m = character_count();
  std::vector<std::uint8_t> cells(species_count_ * m, 0);
  for (std::size_t c = 0; c < m; ++c) {
    for (auto s : to_indices(present_[c])) cells[s * m + c] = 1;
  }
  return cells;
}

Completion::Completion(ExtendedMatrix matrix) : matrix_(std::move(matrix)) {
  if (!matrix_.is_complete()) {
    throw std::invalid_argument("completion still has " +
                                std::to_string(matrix_.unknown_pair_count()) + " unknown pairs");
  }
  for (std::size_t c = 0; c < matrix_.character_count(); ++c) {
    provenance_.push_back({c, matrix_.persistent(c)});
  }
}

std::vector<IndexSet> Completion::columns() const {
  std::vector<IndexSet> out;
  out.reserve(column_count());
  for (std::size_t col = 0; col < column_count(); ++col) out.push_back(matrix_.column_ones(col));
  return out;
}

}  // namespace perphylo
