#include "perphylo/phylogeny.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "perphylo/compatibility.hpp"

namespace perphylo {

namespace {

struct TrieNode {
  std::size_t column = kNoIndex;  // label of the edge into this node
  std::vector<std::size_t> children;
  std::vector<std::size_t> species;
};

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string change_tokens(const std::vector<CharacterChange>& changes,
                          const std::vector<std::string>& labels) {
  std::string out;
  for (const auto& ch : changes) {
    out += ch.loss ? '-' : '+';
    out += labels[ch.character];
  }
  return out;
}

template <typename Node>
std::vector<std::size_t> preorder(const std::vector<Node>& nodes) {
  std::vector<std::size_t> order;
  if (nodes.empty()) return order;
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const auto& kids = nodes[v].children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

}  // namespace

PPTree build_pp_tree(const Completion& completion) {
  const auto columns = completion.columns();
  if (auto w = has_forbidden_submatrix(std::span<const IndexSet>(columns))) {
    throw std::invalid_argument("completion has a forbidden submatrix on columns " +
                                std::to_string(w->first_column) + "," +
                                std::to_string(w->second_column));
  }
  const auto width = columns.size();
  std::vector<std::size_t> order(width);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return columns[a].count() > columns[b].count();
  });

  std::vector<TrieNode> trie(1);
  std::vector<std::size_t> edge_of_column(width, kNoIndex);
  for (std::size_t s = 0; s < completion.species_count(); ++s) {
    std::size_t node = 0;
    for (auto col : order) {
      if (!columns[col].test(s)) continue;
      std::size_t next = kNoIndex;
      for (auto child : trie[node].children) {
        if (trie[child].column == col) next = child;
      }
      if (next == kNoIndex) {
        if (edge_of_column[col] != kNoIndex) {
          throw std::logic_error("column " + std::to_string(col) + " labels two trie edges");
        }
        next = trie.size();
        trie.push_back({col, {}, {}});
        trie[node].children.push_back(next);
        edge_of_column[col] = next;
      }
      node = next;
    }
    trie[node].species.push_back(s);
  }

  PPTree tree;
  tree.column_count = width;
  // Copy the trie in pre-order, contracting unary species-free chains and
  // moving species off internal nodes onto pendant leaves.
  std::function<void(std::size_t, std::optional<std::size_t>, std::vector<std::size_t>)> emit =
      [&](std::size_t t, std::optional<std::size_t> parent, std::vector<std::size_t> labels) {
        while (parent && trie[t].children.size() == 1 && trie[t].species.empty()) {
          t = trie[t].children.front();
          labels.push_back(trie[t].column);
        }
        const auto id = tree.nodes.size();
        tree.nodes.push_back({parent, {}, std::move(labels), {}, IndexSet(width)});
        auto& node = tree.nodes[id];
        if (parent) {
          node.state = tree.nodes[*parent].state;
          tree.nodes[*parent].children.push_back(id);
        }
        for (auto col : tree.nodes[id].columns) tree.nodes[id].state.set(col);
        if (trie[t].children.empty()) {
          tree.nodes[id].species = trie[t].species;
          return;
        }
        if (!trie[t].species.empty()) {
          const auto leaf = tree.nodes.size();
          tree.nodes.push_back({id, {}, {}, trie[t].species, tree.nodes[id].state});
          tree.nodes[id].children.push_back(leaf);
        }
        for (auto child : trie[t].children) emit(child, id, {trie[child].column});
      };
  emit(0, std::nullopt, {});
  return tree;
}

std::size_t PPPTree::loss_count() const {
  std::size_t total = 0;
  for (const auto& node : nodes) {
    for (const auto& ch : node.changes) total += ch.loss ? 1 : 0;
  }
  return total;
}

std::vector<std::size_t> PPPTree::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (nodes[v].children.empty()) out.push_back(v);
  }
  return out;
}

void PPPTree::compute_states() {
  for (auto v : preorder(nodes)) {
    auto& node = nodes[v];
    node.state = node.parent ? nodes[*node.parent].state : IndexSet(character_count());
    for (const auto& ch : node.changes) node.state[ch.character] = !ch.loss;
  }
}

PPPTree relabel_to_ppp(const PPTree& tree, const BinaryMatrix& labels) {
  PPPTree out;
  out.character_labels = labels.character_labels();
  const auto m = tree.column_count / 2;
  for (const auto& node : tree.nodes) {
    PPPNode p;
    p.parent = node.parent;
    p.children = node.children;
    for (auto col : node.columns) p.changes.push_back({col / 2, col % 2 == 1});
    for (auto s : node.species) {
      for (const auto& name : labels.members(s)) p.species.push_back(name);
    }
    p.state = IndexSet(m);
    for (std::size_t j = 0; j < m; ++j) {
      p.state[j] = node.state.test(2 * j) && !node.state.test(2 * j + 1);
    }
    out.nodes.push_back(std::move(p));
  }
  return out;
}

VerificationReport verify_ppp(const PPPTree& tree, const BinaryMatrix& matrix) {
  VerificationReport report;
  auto fail = [&](int property, std::string message) {
    report.violations.push_back({property, std::move(message)});
  };
  const auto m = matrix.character_count();
  if (tree.nodes.empty()) {
    fail(1, "tree has no nodes");
    return report;
  }
  if (tree.character_labels != matrix.character_labels()) {
    fail(1, "tree characters do not match the matrix characters");
    return report;
  }

  // Structure: node 0 is the only parentless node and every node is reached
  // exactly once from it.
  std::vector<int> reached(tree.nodes.size(), 0);
  for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
    const auto& node = tree.nodes[v];
    if ((v == 0) != !node.parent.has_value()) {
      fail(1, "node " + std::to_string(v) + (v == 0 ? " (root) has a parent" : " has no parent"));
    }
    for (auto c : node.children) {
      if (c >= tree.nodes.size() || tree.nodes[c].parent != v) {
        fail(1, "edge " + std::to_string(v) + "->" + std::to_string(c) + " is inconsistent");
      } else {
        ++reached[c];
      }
    }
  }
  for (std::size_t v = 1; v < tree.nodes.size(); ++v) {
    if (reached[v] != 1) fail(1, "node " + std::to_string(v) + " is not a tree node");
  }
  if (!report.passed()) return report;
  const auto order = preorder(tree.nodes);
  if (order.size() != tree.nodes.size()) {
    fail(1, "tree is disconnected");
    return report;
  }

  for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
    if (tree.nodes[v].state.size() != m) {
      fail(1, "node " + std::to_string(v) + " state has length " +
                  std::to_string(tree.nodes[v].state.size()) + ", expected " + std::to_string(m));
    }
  }
  if (!report.passed()) return report;

  std::vector<IndexSet> state(tree.nodes.size(), IndexSet(m));
  std::vector<std::size_t> gains(m, 0);
  std::vector<std::size_t> losses(m, 0);
  if (tree.nodes[0].state.any()) fail(2, "root state is not all zeros");
  for (auto v : order) {
    const auto& node = tree.nodes[v];
    if (node.parent) state[v] = state[*node.parent];
    const auto edge = node.parent ? std::to_string(*node.parent) + "->" + std::to_string(v)
                                  : std::string("root");
    for (const auto& ch : node.changes) {
      const auto& name = tree.character_labels[ch.character];
      if (ch.loss) {
        if (++losses[ch.character] == 2) fail(3, "character " + name + " is lost on two edges");
        if (!state[v].test(ch.character)) {
          fail(3, "loss of " + name + " on edge " + edge + " without a gain above it");
        }
        state[v].reset(ch.character);
      } else {
        if (++gains[ch.character] == 2) fail(3, "character " + name + " is gained on two edges");
        if (state[v].test(ch.character)) {
          fail(3, "gain of " + name + " on edge " + edge + " where it is already present");
        }
        state[v].set(ch.character);
      }
    }
    if (v != 0 && state[v] != node.state) {
      fail(2, "node " + std::to_string(v) + " state does not follow from its edge labels");
    }
    if (node.parent && node.changes.empty() && node.children.empty()) {
      report.notes.push_back("species " + join(node.species, '|') +
                             " attached as a zero-length pendant leaf of node " +
                             std::to_string(*node.parent));
    }
  }

  std::map<std::string, std::size_t> placed;
  for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
    for (const auto& name : tree.nodes[v].species) {
      if (!placed.emplace(name, v).second) {
        fail(4, "species " + name + " labels more than one node");
        continue;
      }
      if (!tree.nodes[v].children.empty()) {
        fail(4, "species " + name + " labels internal node " + std::to_string(v));
      }
      if (!matrix.find_species(name)) fail(4, "species " + name + " is not a row of the matrix");
    }
  }
  for (std::size_t s = 0; s < matrix.species_count(); ++s) {
    for (const auto& name : matrix.members(s)) {
      auto it = placed.find(name);
      if (it == placed.end()) {
        fail(4, "row " + name + " labels no leaf");
        continue;
      }
      const auto& leaf_state = state[it->second];
      for (std::size_t c = 0; c < m; ++c) {
        if (leaf_state.test(c) != matrix(s, c)) {
          fail(4, "leaf " + std::to_string(it->second) + " of row " + name +
                      " differs from the row at character " + matrix.character_label(c));
          break;
        }
      }
    }
  }
  return report;
}

std::string to_newick(const PPPTree& tree) {
  std::function<std::string(std::size_t)> render = [&](std::size_t v) {
    const auto& node = tree.nodes[v];
    std::string out;
    if (node.children.empty()) {
      out = join(node.species, '|');
    } else {
      out = "(";
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i) out += ',';
        out += render(node.children[i]);
      }
      out += ')';
    }
    if (!node.changes.empty()) out += ':' + change_tokens(node.changes, tree.character_labels);
    return out;
  };
  return render(0) + ";";
}

std::string to_edgelist(const PPPTree& tree) {
  const auto order = preorder(tree.nodes);
  std::vector<std::size_t> number(tree.nodes.size());
  for (std::size_t i = 0; i < order.size(); ++i) number[order[i]] = i;
  std::ostringstream out;
  out << "# ppp-edgelist v1\n";
  for (auto v : order) {
    const auto& node = tree.nodes[v];
    if (!node.parent) continue;
    const auto label = change_tokens(node.changes, tree.character_labels);
    out << number[*node.parent] << ' ' << number[v] << ' ' << (label.empty() ? "." : label) << '\n';
  }
  for (auto v : order) {
    if (!tree.nodes[v].species.empty()) {
      out << "leaf " << number[v] << ' ' << join(tree.nodes[v].species, '|') << '\n';
    }
  }
  return out.str();
}

std::string serialize(const PPPTree& tree, TreeFormat format) {
  return format == TreeFormat::Newick ? to_newick(tree) : to_edgelist(tree);
}

PPPTree parse_edgelist(std::string_view text, const std::vector<std::string>& character_labels) {
  std::map<std::string, std::size_t, std::less<>> index_of;
  for (std::size_t j = 0; j < character_labels.size(); ++j) index_of[character_labels[j]] = j;

  PPPTree tree;
  tree.character_labels = character_labels;
  auto node = [&](std::size_t id) -> PPPNode& {
    while (tree.nodes.size() <= id) tree.nodes.push_back({});
    return tree.nodes[id];
  };
  node(0);

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  bool header = false;
  auto error = [&](const std::string& what) {
    return std::runtime_error("edgelist line " + std::to_string(number) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (!header) {
      if (line != "# ppp-edgelist v1") throw error("expected header '# ppp-edgelist v1'");
      header = true;
      continue;
    }
    if (line.front() == '#') continue;
    std::istringstream tokens(line);
    std::string first;
    std::string second;
    std::string third;
    std::string extra;
    if (!(tokens >> first >> second >> third) || (tokens >> extra)) {
      throw error("expected three fields");
    }
    auto parse_id = [&](const std::string& s) -> std::size_t {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        throw error("bad node number '" + s + "'");
      }
      return std::stoul(s);
    };
    if (first == "leaf") {
      const auto id = parse_id(second);
      std::size_t start = 0;
      while (true) {
        const auto bar = third.find('|', start);
        node(id).species.push_back(third.substr(start, bar - start));
        if (bar == std::string::npos) break;
        start = bar + 1;
      }
      continue;
    }
    const auto parent = parse_id(first);
    const auto child = parse_id(second);
    if (child == 0 || parent >= child) throw error("nodes must be numbered in pre-order");
    if (node(child).parent) throw error("node " + second + " has two parents");
    node(child).parent = parent;
    node(parent).children.push_back(child);
    if (third != ".") {
      std::size_t pos = 0;
      while (pos < third.size()) {
        const char sign = third[pos];
        if (sign != '+' && sign != '-') throw error("label must start with '+' or '-'");
        const auto end = third.find_first_of("+-", pos + 1);
        const auto name = third.substr(pos + 1, end == std::string::npos ? end : end - pos - 1);
        auto it = index_of.find(name);
        if (it == index_of.end()) throw error("unknown character '" + name + "'");
        node(child).changes.push_back({it->second, sign == '-'});
        pos = end == std::string::npos ? third.size() : end;
      }
    }
  }
  if (!header) throw std::runtime_error("edgelist is empty");
  for (std::size_t v = 1; v < tree.nodes.size(); ++v) {
    if (!tree.nodes[v].parent) throw std::runtime_error("node " + std::to_string(v) + " has no parent");
  }
  tree.compute_states();
  return tree;
}

}  // namespace perphylo
