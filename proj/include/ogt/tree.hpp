#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ogt/model.hpp"

namespace ogt {

enum class TreeKind {
  OrderedHypercube,  // payload ranges are plain consecutive intervals
  Binomial,          // payload ranges may wrap around rank p-1 (relative-rank order)
};

struct TreeEdge {
  Rank from = 0;
  Rank to = 0;
  std::uint32_t round = 0;
  Rank lo = 0;  // first block index carried
  Rank hi = 0;  // last block index carried (cyclically, for binomial trees)
  std::uint64_t size = 0;
};

struct GatherTree {
  std::uint32_t p = 0;
  RootMode mode = RootMode::Auto;
  Rank root = 0;
  TreeKind kind = TreeKind::OrderedHypercube;
  std::vector<TreeEdge> edges;  // canonical order: (round, from)
};

enum class TreeFormat { Json, Dot };

// Sorts edges into the canonical (round, from) order.
void canonicalize_tree(GatherTree& tree);

// Deterministic, byte-stable output. JSON schema:
//   { "p": int, "mode": "auto"|"fixed", "root": int,
//     "edges": [ { "from": int, "to": int, "round": int,
//                  "lo": int, "hi": int, "size": int } ] }
std::string serialize_tree(const GatherTree& tree, TreeFormat format);

GatherTree tree_from_json(std::string_view text);

// Structural checks shared by the builders: spanning in-tree, send strictly
// after receives, consecutive payload ranges (for ordered trees). Throws on
// violation.
void validate_tree(const GatherTree& tree, const ProblemInstance& instance);

}  // namespace ogt
