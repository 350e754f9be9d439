#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "perphylo/bitset.hpp"
#include "perphylo/extended_matrix.hpp"
#include "perphylo/matrix.hpp"

namespace perphylo {

/// Directed perfect phylogeny over the 2m columns of a completion. Node 0 is
/// the root; nodes are stored in pre-order.
struct PPNode {
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  std::vector<std::size_t> columns;  // labels of the edge into this node, root-to-leaf order
  std::vector<std::size_t> species;  // completion rows placed at this leaf
  IndexSet state;                    // 2m bits
};

struct PPTree {
  std::size_t column_count = 0;
  std::vector<PPNode> nodes;
};

/// Sorts columns by decreasing number of ones (ties by index), threads every
/// row through a trie of its 1-columns, then contracts unary chains. A row
/// ending at an internal node hangs off it as an unlabeled pendant leaf.
/// Throws std::invalid_argument if the completion has a forbidden submatrix.
PPTree build_pp_tree(const Completion& completion);

struct CharacterChange {
  std::size_t character;
  bool loss;

  friend bool operator==(const CharacterChange&, const CharacterChange&) = default;
};

struct PPPNode {
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  std::vector<CharacterChange> changes;  // applied in order along the edge into this node
  std::vector<std::string> species;
  IndexSet state;  // m bits
};

/// Persistent perfect phylogeny: gains `+c` and losses `-c` on edges.
struct PPPTree {
  std::vector<std::string> character_labels;
  std::vector<PPPNode> nodes;  // node 0 is the root

  std::size_t character_count() const { return character_labels.size(); }
  std::size_t loss_count() const;
  std::vector<std::size_t> leaves() const;
  /// Recomputes every state vector from the edge labels.
  void compute_states();
};

/// Character j is 1 at a node iff its column 2j is 1 and 2j+1 is 0. Leaves
/// are named with the member labels of the matrix species they hold.
PPPTree relabel_to_ppp(const PPTree& tree, const BinaryMatrix& labels);

struct Violation {
  int property;  // 1-4 of the persistent perfect phylogeny definition
  std::string message;
};

struct VerificationReport {
  std::vector<Violation> violations;
  std::vector<std::string> notes;

  bool passed() const { return violations.empty(); }
};

/// Checks the tree against the matrix: state vectors, root of zeros, at
/// most one gain and one loss per character with the gain above the loss,
/// every row at exactly one leaf with matching state.
VerificationReport verify_ppp(const PPPTree& tree, const BinaryMatrix& matrix);

enum class TreeFormat : unsigned char { Newick, EdgeList };

std::string to_newick(const PPPTree& tree);
/// `# ppp-edgelist v1` header, `parent child labels` per edge in pre-order
/// numbering (`.` for an unlabeled edge), `leaf node names` per labeled node.
std::string to_edgelist(const PPPTree& tree);
std::string serialize(const PPPTree& tree, TreeFormat format);

/// Throws std::runtime_error on malformed input or unknown character names.
PPPTree parse_edgelist(std::string_view text, const std::vector<std::string>& character_labels);

/// Convenience: completion -> pp tree -> p-pp tree.
inline PPPTree build_ppp_tree(const Completion& completion, const BinaryMatrix& matrix) {
  return relabel_to_ppp(build_pp_tree(completion), matrix);
}

}  // namespace perphylo
