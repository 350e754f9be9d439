#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace perphylo {

/// Set of species (or columns) indexed by position.
using IndexSet = boost::dynamic_bitset<std::uint64_t>;

inline constexpr std::size_t kNoIndex = IndexSet::npos;

inline std::vector<std::size_t> to_indices(const IndexSet& set) {
  std::vector<std::size_t> out;
  out.reserve(set.count());
  for (auto i = set.find_first(); i != IndexSet::npos; i = set.find_next(i)) {
    out.push_back(i);
  }
  return out;
}

inline IndexSet from_indices(std::size_t size, const std::vector<std::size_t>& indices) {
  IndexSet set(size);
  for (auto i : indices) set.set(i);
  return set;
}

}  // namespace perphylo
