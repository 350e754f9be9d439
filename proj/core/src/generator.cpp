#include "perphylo/generator.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace perphylo {

namespace {

struct RawTree {
  std::vector<std::size_t> parent;  // parent[0] unused
  std::vector<std::vector<std::size_t>> children;
};

RawTree random_tree(std::size_t leaves, std::mt19937_64& rng) {
  RawTree t{{0}, {{}}};
  std::size_t leaf_count = 0;
  while (leaf_count < leaves) {
    std::uniform_int_distribution<std::size_t> pick(0, t.parent.size() - 1);
    const auto u = pick(rng);
    // Attaching below a leaf keeps the count; below an internal node (or the
    // bare root) adds one.
    if (!t.children[u].empty() || u == 0) ++leaf_count;
    const auto v = t.parent.size();
    t.parent.push_back(u);
    t.children.push_back({});
    t.children[u].push_back(v);
  }
  return t;
}

}  // namespace

GeneratedInstance generate_instance(const GeneratorParams& params) {
  if (params.species == 0 || params.characters == 0) {
    throw std::invalid_argument("generator needs at least one species and one character");
  }
  if (!(params.loss_probability >= 0.0 && params.loss_probability <= 1.0)) {
    throw std::invalid_argument("loss probability must lie in [0, 1]");
  }
  std::mt19937_64 rng(params.seed);
  std::bernoulli_distribution lose(params.loss_probability);
  const auto n = params.species;
  const auto m = params.characters;

  for (std::size_t attempt = 1; attempt <= params.max_retries; ++attempt) {
    const auto raw = random_tree(n, rng);
    const auto size = raw.parent.size();

    std::vector<std::vector<CharacterChange>> changes(size);
    std::uniform_int_distribution<std::size_t> pick_edge(1, size - 1);
    for (std::size_t c = 0; c < m; ++c) {
      const auto gain = pick_edge(rng);
      changes[gain].push_back({c, false});
      if (!lose(rng)) continue;
      std::vector<std::size_t> below;
      for (auto v = gain; !raw.children[v].empty();) {
        std::uniform_int_distribution<std::size_t> pick(0, raw.children[v].size() - 1);
        v = raw.children[v][pick(rng)];
        below.push_back(v);
      }
      if (below.empty()) continue;
      std::uniform_int_distribution<std::size_t> pick(0, below.size() - 1);
      changes[below[pick(rng)]].push_back({c, true});
    }

    PPPTree tree;
    for (std::size_t c = 0; c < m; ++c) tree.character_labels.push_back("c" + std::to_string(c + 1));
    tree.nodes.resize(size);
    for (std::size_t v = 0; v < size; ++v) {
      if (v) tree.nodes[v].parent = raw.parent[v];
      tree.nodes[v].children = raw.children[v];
      auto& edge = changes[v];
      std::sort(edge.begin(), edge.end(), [](const auto& a, const auto& b) {
        return a.character < b.character;
      });
      tree.nodes[v].changes = edge;
    }
    tree.compute_states();

    // Leaves in pre-order become s1..sn.
    std::vector<std::uint8_t> cells;
    std::vector<std::string> names;
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      const auto& kids = tree.nodes[v].children;
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
      if (!kids.empty()) continue;
      names.push_back("s" + std::to_string(names.size() + 1));
      tree.nodes[v].species = {names.back()};
      for (std::size_t c = 0; c < m; ++c) cells.push_back(tree.nodes[v].state.test(c) ? 1 : 0);
    }

    bool zero_column = false;
    for (std::size_t c = 0; c < m && !zero_column; ++c) {
      bool any = false;
      for (std::size_t s = 0; s < n && !any; ++s) any = cells[s * m + c] != 0;
      zero_column = !any;
    }
    if (zero_column) continue;
    if (!params.allow_duplicate_rows) {
      std::set<std::vector<std::uint8_t>> distinct;
      for (std::size_t s = 0; s < n; ++s) {
        distinct.emplace(cells.begin() + static_cast<std::ptrdiff_t>(s * m),
                         cells.begin() + static_cast<std::ptrdiff_t>((s + 1) * m));
      }
      if (distinct.size() < n) continue;
    }
    BinaryMatrix matrix(n, m, std::move(cells), std::move(names), tree.character_labels);
    return GeneratedInstance{std::move(matrix), std::move(tree), attempt};
  }
  throw GeneratorError("no valid instance after " + std::to_string(params.max_retries) +
                       " attempts (species " + std::to_string(n) + ", characters " +
                       std::to_string(m) + "); repeated rows are the usual cause");
}

BinaryMatrix random_matrix(std::size_t species, std::size_t characters, std::mt19937_64& rng,
                           double density) {
  if (!(density > 0.0 && density <= 1.0)) throw std::invalid_argument("density must lie in (0, 1]");
  std::bernoulli_distribution one(density);
  std::vector<std::uint8_t> cells(species * characters, 0);
  for (std::size_t c = 0; c < characters; ++c) {
    bool any = false;
    while (!any) {
      for (std::size_t s = 0; s < species; ++s) {
        cells[s * characters + c] = one(rng) ? 1 : 0;
        any = any || cells[s * characters + c];
      }
    }
  }
  return BinaryMatrix(species, characters, std::move(cells));
}

}  // namespace perphylo
