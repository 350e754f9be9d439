#include "perphylo/matrix.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace perphylo {

namespace {

std::string describe(const std::string& what, std::optional<std::size_t> row,
                     std::optional<std::size_t> column) {
  std::string out = what;
  if (row || column) {
    out += " (";
    if (row) out += "row " + std::to_string(*row);
    if (row && column) out += ", ";
    if (column) out += "column " + std::to_string(*column);
    out += ")";
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_labels(std::string_view list) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = list.find(',', start);
    out.emplace_back(trim(list.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void check_labels(const std::vector<std::string>& labels, bool characters) {
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& label = labels[i];
    const bool ok = characters ? is_valid_character_label(label) : is_valid_species_label(label);
    if (!ok) {
      throw MatrixError("invalid " + std::string(characters ? "character" : "species") +
                            " label '" + label + "'",
                        characters ? std::nullopt : std::optional<std::size_t>(i + 1),
                        characters ? std::optional<std::size_t>(i + 1) : std::nullopt);
    }
    if (!seen.insert(label).second) {
      throw MatrixError("duplicate " + std::string(characters ? "character" : "species") +
                        " label '" + label + "'");
    }
  }
}

}  // namespace

MatrixError::MatrixError(const std::string& what, std::optional<std::size_t> row,
                         std::optional<std::size_t> column)
    : std::runtime_error(describe(what, row, column)), row_(row), column_(column) {}

bool is_valid_species_label(std::string_view label) {
  if (label.empty()) return false;
  return label.find_first_of(" \t\r\n,();:|#") == std::string_view::npos;
}

bool is_valid_character_label(std::string_view label) {
  return is_valid_species_label(label) && label.find_first_of("+-.") == std::string_view::npos;
}

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t columns, std::vector<std::uint8_t> cells,
                           std::vector<std::string> species_labels,
                           std::vector<std::string> character_labels, const LoadOptions& options) {
  if (rows == 0) throw MatrixError("matrix has no species");
  if (columns == 0) throw MatrixError("matrix has no characters");
  if (cells.size() != rows * columns) {
    throw MatrixError("dimension mismatch: expected " + std::to_string(rows * columns) +
                      " cells, got " + std::to_string(cells.size()));
  }
  if (species_labels.empty()) {
    for (std::size_t i = 0; i < rows; ++i) species_labels.push_back(std::to_string(i + 1));
  }
  if (character_labels.empty()) {
    for (std::size_t j = 0; j < columns; ++j) character_labels.push_back("c" + std::to_string(j + 1));
  }
  if (species_labels.size() != rows) {
    throw MatrixError("dimension mismatch: " + std::to_string(species_labels.size()) +
                      " species labels for " + std::to_string(rows) + " rows");
  }
  if (character_labels.size() != columns) {
    throw MatrixError("dimension mismatch: " + std::to_string(character_labels.size()) +
                      " character labels for " + std::to_string(columns) + " columns");
  }
  check_labels(species_labels, false);
  check_labels(character_labels, true);

  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns; ++j) {
      if (cells[i * columns + j] > 1) throw MatrixError("cell is not 0 or 1", i + 1, j + 1);
    }
  }

  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < columns; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < rows && !any; ++i) any = cells[i * columns + j] != 0;
    if (any) {
      kept.push_back(j);
    } else if (!options.drop_zero_columns) {
      throw MatrixError("character '" + character_labels[j] + "' is all-zero", std::nullopt, j + 1);
    }
  }
  if (kept.empty()) throw MatrixError("no characters left after dropping all-zero columns");
  for (auto j : kept) character_labels_.push_back(character_labels[j]);

  std::map<std::vector<std::uint8_t>, std::size_t> index_of_row;
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<std::uint8_t> row;
    row.reserve(kept.size());
    for (auto j : kept) row.push_back(cells[i * columns + j]);
    auto [it, inserted] = index_of_row.emplace(row, species_labels_.size());
    if (inserted) {
      cells_.insert(cells_.end(), row.begin(), row.end());
      species_labels_.push_back(species_labels[i]);
      members_.push_back({species_labels[i]});
    } else {
      members_[it->second].push_back(species_labels[i]);
    }
  }

  const auto n = species_labels_.size();
  const auto m = character_labels_.size();
  columns_.assign(m, IndexSet(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (cells_[i * m + j]) columns_[j].set(i);
    }
  }
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw MatrixError("matrix has no species");
  const auto m = rows.front().size();
  std::vector<std::uint8_t> cells;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m) throw MatrixError("dimension mismatch: ragged row", i + 1);
    for (std::size_t j = 0; j < m; ++j) {
      const int v = rows[i][j];
      if (v != 0 && v != 1) throw MatrixError("cell is not 0 or 1", i + 1, j + 1);
      cells.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return BinaryMatrix(rows.size(), m, std::move(cells));
}

std::vector<std::uint8_t> BinaryMatrix::row(std::size_t species) const {
  const auto m = character_count();
  return {cells_.begin() + static_cast<std::ptrdiff_t>(species * m),
          cells_.begin() + static_cast<std::ptrdiff_t>((species + 1) * m)};
}

std::size_t BinaryMatrix::original_row_count() const {
  std::size_t total = 0;
  for (const auto& m : members_) total += m.size();
  return total;
}

std::optional<std::size_t> BinaryMatrix::find_character(std::string_view label) const {
  for (std::size_t j = 0; j < character_labels_.size(); ++j) {
    if (character_labels_[j] == label) return j;
  }
  return std::nullopt;
}

std::optional<std::size_t> BinaryMatrix::find_species(std::string_view label) const {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    for (const auto& name : members_[i]) {
      if (name == label) return i;
    }
  }
  return std::nullopt;
}

BinaryMatrix load_matrix(std::string_view text, const LoadOptions& options) {
  std::optional<std::size_t> rows;
  std::optional<std::size_t> columns;
  std::vector<std::string> species_labels;
  std::vector<std::string> character_labels;
  std::vector<std::uint8_t> cells;
  std::size_t rows_read = 0;
  std::size_t line_number = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto newline = text.find('\n', pos);
    const auto raw = text.substr(pos, newline == std::string_view::npos ? text.size() - pos
                                                                        : newline - pos);
    pos = newline == std::string_view::npos ? text.size() + 1 : newline + 1;
    ++line_number;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = trim(line.substr(1));
      if (body.starts_with("species:")) {
        species_labels = split_labels(body.substr(8));
      } else if (body.starts_with("characters:")) {
        character_labels = split_labels(body.substr(11));
      }
      continue;
    }

    std::istringstream tokens{std::string(line)};
    if (!rows) {
      long long n = -1;
      long long m = -1;
      std::string extra;
      if (!(tokens >> n >> m) || (tokens >> extra) || n <= 0 || m <= 0) {
        throw MatrixError("expected header 'n m' with positive counts on line " +
                          std::to_string(line_number));
      }
      rows = static_cast<std::size_t>(n);
      columns = static_cast<std::size_t>(m);
      cells.reserve(*rows * *columns);
      continue;
    }

    if (rows_read == *rows) {
      throw MatrixError("dimension mismatch: more than " + std::to_string(*rows) + " rows",
                        rows_read + 1);
    }
    std::string token;
    std::size_t column = 0;
    while (tokens >> token) {
      ++column;
      if (column > *columns) {
        throw MatrixError("dimension mismatch: more than " + std::to_string(*columns) +
                              " cells in row",
                          rows_read + 1, column);
      }
      if (token != "0" && token != "1") {
        throw MatrixError("malformed cell '" + token + "'", rows_read + 1, column);
      }
      cells.push_back(token == "1" ? 1 : 0);
    }
    if (column < *columns) {
      throw MatrixError("dimension mismatch: " + std::to_string(column) + " cells in row, expected " +
                            std::to_string(*columns),
                        rows_read + 1, column + 1);
    }
    ++rows_read;
  }

  if (!rows) throw MatrixError("missing 'n m' header");
  if (rows_read != *rows) {
    throw MatrixError("dimension mismatch: expected " + std::to_string(*rows) + " rows, got " +
                          std::to_string(rows_read),
                      rows_read + 1);
  }
  return BinaryMatrix(*rows, *columns, std::move(cells), std::move(species_labels),
                      std::move(character_labels), options);
}

BinaryMatrix load_matrix_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open matrix file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_matrix(buffer.str(), options);
}

std::string format_matrix(const BinaryMatrix& matrix) {
  struct Line {
    std::string name;
    std::size_t species;
  };
  std::vector<Line> lines;
  for (std::size_t i = 0; i < matrix.species_count(); ++i) {
    for (const auto& name : matrix.members(i)) lines.push_back({name, i});
  }

  std::ostringstream out;
  out << "# species: ";
  for (std::size_t k = 0; k < lines.size(); ++k) out << (k ? "," : "") << lines[k].name;
  out << "\n# characters: ";
  for (std::size_t j = 0; j < matrix.character_count(); ++j) {
    out << (j ? "," : "") << matrix.character_label(j);
  }
  out << "\n" << lines.size() << ' ' << matrix.character_count() << '\n';
  for (const auto& line : lines) {
    for (std::size_t j = 0; j < matrix.character_count(); ++j) {
      out << (j ? " " : "") << (matrix(line.species, j) ? '1' : '0');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace perphylo
