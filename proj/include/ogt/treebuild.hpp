#pragma once

#include "ogt/model.hpp"
#include "ogt/tree.hpp"

namespace ogt {

// Per-cube summary used while merging: the gather root, its gather-time
// estimate (data units, excluding the root's own block) and the root's block
// size. Exactly the triple exchanged by the distributed protocol.
struct CubeSummary {
  Rank gather_root = 0;
  std::uint64_t estimate = 0;
  std::uint64_t root_size = 0;

  std::uint64_t total() const { return estimate + root_size; }
};

// True when the lower cube's gather root sends to the upper cube's root.
// Comparison order: smaller estimate sends; ties by smaller total data; final
// tie broken in favor of the lower rank range. A cube containing the fixed
// root always receives.
bool lower_cube_sends(const CubeSummary& lower, const CubeSummary& upper,
                      bool lower_has_fixed_root, bool upper_has_fixed_root);

// Centralized construction from global size knowledge; ground truth for the
// distributed protocol.
GatherTree build_tree(const ProblemInstance& instance);

// ceil(log2 p)*alpha + beta*sum_{i != root} m_i; auto-root trees only (the
// simulated makespan matches this exactly).
Rat predicted_completion(const GatherTree& tree, const ProblemInstance& instance,
                         const CostModel& model);

}  // namespace ogt
