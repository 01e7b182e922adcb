#pragma once

#include <cstdint>
#include <vector>

#include "ogt/model.hpp"
#include "ogt/tree.hpp"

namespace ogt::test {

// Test-local splitmix64 stream; keeps the corpora reproducible without
// touching the library's generator.
inline std::uint64_t splitmix(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline const std::vector<std::uint64_t> kExampleSizes = {1, 0, 2, 3, 4, 2, 0, 0, 1, 7, 5};

inline const std::vector<TreeEdge> kExampleFixedEdges = {
    {1, 0, 0, 1, 1, 0}, {2, 3, 0, 2, 2, 2},  {5, 4, 0, 5, 5, 2},  {6, 7, 0, 6, 6, 0},
    {8, 9, 0, 8, 8, 1}, {0, 3, 1, 0, 1, 1},  {7, 4, 1, 6, 7, 0},  {10, 9, 1, 10, 10, 5},
    {4, 3, 2, 4, 7, 6}, {3, 9, 3, 0, 7, 12},
};

// Strictly positive sizes, average block size cycling through {1,10,100,1000}.
inline std::vector<std::uint64_t> positive_sizes(std::uint64_t& state, std::uint32_t p) {
  static const std::uint64_t kB[] = {1, 10, 100, 1000};
  std::uint64_t b = kB[splitmix(state) % 4];
  std::vector<std::uint64_t> sizes(p);
  for (auto& m : sizes) m = 1 + splitmix(state) % (2 * b);
  return sizes;
}

// Sizes with zeros mixed in; occasionally an all-zero vector.
inline std::vector<std::uint64_t> zeroish_sizes(std::uint64_t& state, std::uint32_t p,
                                                std::uint32_t salt) {
  if (salt % 41 == 0) return std::vector<std::uint64_t>(p, 0);
  static const std::uint64_t kB[] = {1, 10, 100};
  std::uint64_t b = kB[splitmix(state) % 3];
  std::vector<std::uint64_t> sizes(p);
  for (auto& m : sizes) {
    if (splitmix(state) % 3 == 0)
      m = 0;
    else
      m = splitmix(state) % (2 * b + 1);
  }
  return sizes;
}

inline bool edges_equal(const std::vector<TreeEdge>& a, const std::vector<TreeEdge>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].from != b[i].from || a[i].to != b[i].to || a[i].round != b[i].round ||
        a[i].lo != b[i].lo || a[i].hi != b[i].hi || a[i].size != b[i].size)
      return false;
  }
  return true;
}

}  // namespace ogt::test
