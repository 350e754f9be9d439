#include "perphylo/red_black_graph.hpp"

#include <sstream>
#include <stdexcept>

namespace perphylo {

std::vector<std::size_t> RealizationLog::realized_characters() const {
  std::vector<std::size_t> out;
  for (const auto& e : events_) {
    if (e.kind == EventKind::CharacterRealized) out.push_back(e.id);
  }
  return out;
}

std::string RealizationLog::to_trace(std::span<const std::string> character_labels,
                                     std::span<const std::string> species_labels) const {
  std::ostringstream out;
  for (const auto& e : events_) {
    switch (e.kind) {
      case EventKind::CharacterRealized:
        out << "realize " << character_labels[e.id] << '\n';
        break;
      case EventKind::CharacterFreed:
        out << "free " << character_labels[e.id] << '\n';
        break;
      case EventKind::SpeciesRealized:
        out << "species " << species_labels[e.id] << '\n';
        break;
    }
  }
  return out.str();
}

std::vector<TraceLine> parse_trace(std::string_view text) {
  std::vector<TraceLine> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream tokens(line);
    std::string verb;
    if (!(tokens >> verb) || verb.front() == '#') continue;
    std::string label;
    std::string extra;
    if (verb != "realize" && verb != "free" && verb != "species") {
      throw std::runtime_error("trace line " + std::to_string(number) + ": unknown event '" +
                               verb + "'");
    }
    if (!(tokens >> label) || (tokens >> extra)) {
      throw std::runtime_error("trace line " + std::to_string(number) +
                               ": expected '<event> <label>'");
    }
    lines.push_back({verb, label, number});
  }
  return lines;
}

RedBlackGraph::RedBlackGraph(const ExtendedMatrix& matrix)
    : species_count_(matrix.species_count()),
      active_(matrix.character_count(), 0),
      freed_(matrix.character_count(), 0),
      retired_(matrix.species_count()) {
  for (std::size_t c = 0; c < matrix.character_count(); ++c) {
    black_.push_back(matrix.present(c));
    red_.emplace_back(species_count_);
  }
}

RedBlackGraph RedBlackGraph::with_nodes(std::size_t species, std::size_t characters) {
  RedBlackGraph g;
  g.species_count_ = species;
  g.black_.assign(characters, IndexSet(species));
  g.red_.assign(characters, IndexSet(species));
  g.active_.assign(characters, 0);
  g.freed_.assign(characters, 0);
  g.retired_ = IndexSet(species);
  return g;
}

void RedBlackGraph::add_edge(std::size_t character, std::size_t species, EdgeColor color) {
  if (edge(character, species) != EdgeColor::None) {
    throw std::logic_error("edge already present");
  }
  if (color == EdgeColor::Black) black_[character].set(species);
  if (color == EdgeColor::Red) red_[character].set(species);
}

EdgeColor RedBlackGraph::edge(std::size_t character, std::size_t species) const {
  if (black_[character].test(species)) return EdgeColor::Black;
  if (red_[character].test(species)) return EdgeColor::Red;
  return EdgeColor::None;
}

std::size_t RedBlackGraph::edge_count() const {
  std::size_t total = 0;
  for (std::size_t c = 0; c < character_count(); ++c) total += black_[c].count() + red_[c].count();
  return total;
}

Component RedBlackGraph::component_of(std::size_t character) const {
  const auto m = character_count();
  Component comp{IndexSet(species_count_), IndexSet(m)};
  comp.characters.set(character);
  IndexSet frontier(m);
  frontier.set(character);
  while (frontier.any()) {
    IndexSet reached(species_count_);
    for (auto c = frontier.find_first(); c != IndexSet::npos; c = frontier.find_next(c)) {
      reached |= black_[c];
      reached |= red_[c];
    }
    reached -= comp.species;
    frontier.reset();
    if (reached.none()) break;
    comp.species |= reached;
    for (std::size_t c = 0; c < m; ++c) {
      if (comp.characters.test(c)) continue;
      if (black_[c].intersects(reached) || red_[c].intersects(reached)) {
        comp.characters.set(c);
        frontier.set(c);
      }
    }
  }
  return comp;
}

bool RedBlackGraph::is_free(std::size_t character, IndexSet* component_species) const {
  if (!active_[character] || freed_[character]) return false;
  auto comp = component_of(character);
  if (!comp.species.is_subset_of(red_[character])) return false;
  if (component_species) *component_species = std::move(comp.species);
  return true;
}

void RedBlackGraph::retire_isolated(RealizationLog* log) {
  IndexSet covered(species_count_);
  for (std::size_t c = 0; c < character_count(); ++c) {
    covered |= black_[c];
    covered |= red_[c];
  }
  const IndexSet isolated = ~covered - retired_;
  retired_ |= isolated;
  if (log) {
    for (auto s : to_indices(isolated)) log->append({EventKind::SpeciesRealized, s, IndexSet()});
  }
}

void RedBlackGraph::realize(std::size_t character, ExtendedMatrix& matrix, RealizationLog* log) {
  if (character >= character_count()) throw std::out_of_range("character index out of range");
  if (active_[character]) {
    throw std::logic_error("character " + std::to_string(character) + " is already active");
  }
  if (matrix.species_count() != species_count_ || matrix.character_count() != character_count()) {
    throw std::invalid_argument("extended matrix does not match the graph");
  }

  auto comp = component_of(character);
  matrix.complete_character(character, comp.species);
  red_[character] |= comp.species - black_[character];
  black_[character].reset();
  active_[character] = 1;
  if (log) log->append({EventKind::CharacterRealized, character, comp.species});
  retire_isolated(log);

  // Restart from the lowest index after every free so the cascade order is
  // reproducible.
  IndexSet species;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t c = 0; c < character_count(); ++c) {
      if (!is_free(c, &species)) continue;
      red_[c].reset();
      freed_[c] = 1;
      if (log) log->append({EventKind::CharacterFreed, c, species});
      retire_isolated(log);
      changed = true;
      break;
    }
  }
}

std::optional<SigmaWitness> find_sigma(const RedBlackGraph& graph, SigmaEdges edges) {
  const auto m = graph.character_count();
  std::vector<IndexSet> adjacency;
  adjacency.reserve(m);
  for (std::size_t c = 0; c < m; ++c) {
    adjacency.push_back(edges == SigmaEdges::Red ? graph.red_neighbors(c) : graph.neighbors(c));
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (adjacency[a].none()) continue;
    for (std::size_t b = a + 1; b < m; ++b) {
      const auto& x = adjacency[a];
      const auto& y = adjacency[b];
      if (!x.intersects(y) || x.is_subset_of(y) || y.is_subset_of(x)) continue;
      return SigmaWitness{a, b, (x - y).find_first(), (x & y).find_first(), (y - x).find_first()};
    }
  }
  return std::nullopt;
}

ReplayResult replay(const ExtendedMatrix& matrix, std::span<const std::size_t> sequence) {
  ReplayResult result{RedBlackGraph(matrix), matrix, {}, false};
  std::vector<unsigned char> seen(matrix.character_count(), 0);
  for (auto c : sequence) {
    if (c >= matrix.character_count()) {
      throw std::invalid_argument("character index " + std::to_string(c) + " out of range");
    }
    if (seen[c]) {
      throw std::invalid_argument("duplicate realization of character " + std::to_string(c));
    }
    seen[c] = 1;
    result.graph.realize(c, result.matrix, &result.log);
  }
  result.e_empty = is_e_empty(result.graph);
  return result;
}

}  // namespace perphylo
