#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "perphylo/bitset.hpp"
#include "perphylo/extended_matrix.hpp"

namespace perphylo {

enum class EdgeColor : unsigned char { None, Black, Red };

/// Nodes reachable from a starting node.
struct Component {
  IndexSet species;
  IndexSet characters;

  friend bool operator==(const Component&, const Component&) = default;
};

enum class EventKind : unsigned char { CharacterRealized, CharacterFreed, SpeciesRealized };

struct RealizationEvent {
  EventKind kind;
  std::size_t id;     // character, or species for SpeciesRealized
  IndexSet species;   // component species; empty for SpeciesRealized

  friend bool operator==(const RealizationEvent&, const RealizationEvent&) = default;
};

/// Ordered record of a sequence of realizations. Together with the source
/// extended matrix it determines the canonical completion.
class RealizationLog {
 public:
  void append(RealizationEvent event) { events_.push_back(std::move(event)); }
  const std::vector<RealizationEvent>& events() const { return events_; }
  std::vector<std::size_t> realized_characters() const;
  bool empty() const { return events_.empty(); }

  /// One `realize <c>` / `free <c>` / `species <s>` line per event.
  std::string to_trace(std::span<const std::string> character_labels,
                       std::span<const std::string> species_labels) const;

  friend bool operator==(const RealizationLog&, const RealizationLog&) = default;

 private:
  std::vector<RealizationEvent> events_;
};

/// A parsed trace file: events by label, unresolved.
struct TraceLine {
  std::string verb;  // realize | free | species
  std::string label;
  std::size_t line_number;
};

/// Throws std::runtime_error on unknown verbs or missing labels.
std::vector<TraceLine> parse_trace(std::string_view text);

/// Bipartite species/character graph. Black edges mark species that have a
/// character; red edges mark species forced to gain and lose it. Edges are
/// stored as per-character species sets.
class RedBlackGraph {
 public:
  RedBlackGraph() = default;
  /// Black edge (c, s) exactly where the pair of s for c is (1,0).
  explicit RedBlackGraph(const ExtendedMatrix& matrix);

  std::size_t species_count() const { return species_count_; }
  std::size_t character_count() const { return black_.size(); }

  EdgeColor edge(std::size_t character, std::size_t species) const;
  const IndexSet& black_neighbors(std::size_t character) const { return black_[character]; }
  const IndexSet& red_neighbors(std::size_t character) const { return red_[character]; }
  IndexSet neighbors(std::size_t character) const { return black_[character] | red_[character]; }
  std::size_t edge_count() const;

  bool is_active(std::size_t character) const { return active_[character] != 0; }
  bool is_freed(std::size_t character) const { return freed_[character] != 0; }
  /// Species removed from play after losing their last edge.
  const IndexSet& retired_species() const { return retired_; }

  /// Fresh traversal over edges of both colors.
  Component component_of(std::size_t character) const;

  /// Realizes an inactive character: red edges to every species of its
  /// component it is not yet adjacent to, black edges dropped, canonical
  /// completion written into `matrix`, then free characters cleaned up to a
  /// fixed point and isolated species retired. Throws std::logic_error if
  /// the character is already active.
  void realize(std::size_t character, ExtendedMatrix& matrix, RealizationLog* log = nullptr);

  /// Adds edges directly; for building test graphs. Both endpoints must be
  /// free of an existing edge.
  void add_edge(std::size_t character, std::size_t species, EdgeColor color);
  void set_active(std::size_t character) { active_[character] = 1; }
  /// Empty graph on the given node counts.
  static RedBlackGraph with_nodes(std::size_t species, std::size_t characters);

  friend bool operator==(const RedBlackGraph&, const RedBlackGraph&) = default;

 private:
  bool is_free(std::size_t character, IndexSet* component_species) const;
  void retire_isolated(RealizationLog* log);

  std::size_t species_count_ = 0;
  std::vector<IndexSet> black_;
  std::vector<IndexSet> red_;
  std::vector<unsigned char> active_;
  std::vector<unsigned char> freed_;
  IndexSet retired_;
};

inline RedBlackGraph from_extended(const ExtendedMatrix& matrix) { return RedBlackGraph(matrix); }

inline bool is_e_empty(const RedBlackGraph& graph) { return graph.edge_count() == 0; }

/// Path s1 - c - s2 - c' - s3.
struct SigmaWitness {
  std::size_t first_character;
  std::size_t second_character;
  std::size_t first_species;   // adjacent to first_character only
  std::size_t shared_species;  // adjacent to both
  std::size_t second_species;  // adjacent to second_character only

  friend bool operator==(const SigmaWitness&, const SigmaWitness&) = default;
};

enum class SigmaEdges : unsigned char {
  // Red edges only: a red Sigma-graph is permanent, both characters are
  // active and neither can become free while the other keeps its edges.
  Red,
  // Edges of either color.
  Any,
};

/// First character pair (ascending) whose edge sets overlap without nesting;
/// species are the lowest index of each role.
std::optional<SigmaWitness> find_sigma(const RedBlackGraph& graph, SigmaEdges edges = SigmaEdges::Red);

struct ReplayResult {
  RedBlackGraph graph;
  ExtendedMatrix matrix;  // partially completed unless the sequence covers every character
  RealizationLog log;
  bool e_empty = false;

  /// Throws std::invalid_argument unless every character was realized.
  Completion completion() const { return Completion(matrix); }
};

/// Realizes `sequence` in order starting from the fresh graph of `matrix`.
/// Throws std::invalid_argument on out-of-range or repeated characters.
ReplayResult replay(const ExtendedMatrix& matrix, std::span<const std::size_t> sequence);

}  // namespace perphylo
