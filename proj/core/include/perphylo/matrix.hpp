#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "perphylo/bitset.hpp"

namespace perphylo {

/// Raised for malformed or invalid matrix input. Coordinates are 1-based
/// (line/row and column as a user sees them in the file) when known.
class MatrixError : public std::runtime_error {
 public:
  MatrixError(const std::string& what, std::optional<std::size_t> row = std::nullopt,
              std::optional<std::size_t> column = std::nullopt);

  std::optional<std::size_t> row() const { return row_; }
  std::optional<std::size_t> column() const { return column_; }

 private:
  std::optional<std::size_t> row_;
  std::optional<std::size_t> column_;
};

struct LoadOptions {
  // Strip all-zero characters instead of rejecting the matrix.
  bool drop_zero_columns = false;
};

/// Species x character 0/1 matrix. Identical rows are collapsed into one
/// species that remembers the names of every row it stands for.
class BinaryMatrix {
 public:
  /// `cells` is row-major, `rows * columns` entries, each 0 or 1. Empty label
  /// vectors get the defaults 1..n and c1..cm.
  BinaryMatrix(std::size_t rows, std::size_t columns, std::vector<std::uint8_t> cells,
               std::vector<std::string> species_labels = {},
               std::vector<std::string> character_labels = {},
               const LoadOptions& options = {});

  static BinaryMatrix from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t species_count() const { return species_labels_.size(); }
  std::size_t character_count() const { return character_labels_.size(); }

  bool operator()(std::size_t species, std::size_t character) const {
    return cells_[species * character_count() + character] != 0;
  }

  /// Species having the character.
  const IndexSet& column(std::size_t character) const { return columns_[character]; }
  std::vector<std::uint8_t> row(std::size_t species) const;

  /// Name of the first row collapsed into this species.
  const std::string& species_label(std::size_t species) const { return species_labels_[species]; }
  const std::vector<std::string>& species_labels() const { return species_labels_; }
  /// Names of every input row equal to this species' row, in input order.
  const std::vector<std::string>& members(std::size_t species) const { return members_[species]; }
  const std::string& character_label(std::size_t character) const {
    return character_labels_[character];
  }
  const std::vector<std::string>& character_labels() const { return character_labels_; }

  /// Number of input rows before duplicate collapse.
  std::size_t original_row_count() const;

  std::optional<std::size_t> find_character(std::string_view label) const;
  /// Species index whose member list contains `label`.
  std::optional<std::size_t> find_species(std::string_view label) const;

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

 private:
  std::vector<std::uint8_t> cells_;
  std::vector<IndexSet> columns_;
  std::vector<std::string> species_labels_;
  std::vector<std::vector<std::string>> members_;
  std::vector<std::string> character_labels_;
};

/// Parses the text matrix format: `n m` header, n rows of m 0/1 tokens,
/// `#` comment lines, optional `# species:` / `# characters:` label lines.
BinaryMatrix load_matrix(std::string_view text, const LoadOptions& options = {});
BinaryMatrix load_matrix_file(const std::string& path, const LoadOptions& options = {});

/// Writes the matrix back in the text format, re-expanding collapsed rows.
std::string format_matrix(const BinaryMatrix& matrix);

bool is_valid_species_label(std::string_view label);
bool is_valid_character_label(std::string_view label);

}  // namespace perphylo
