#include "ogt/treebuild.hpp"

#include "ogt/hypercube.hpp"

namespace ogt {

bool lower_cube_sends(const CubeSummary& lower, const CubeSummary& upper,
                      bool lower_has_fixed_root, bool upper_has_fixed_root) {
  // A cube containing the externally given root always receives.
  if (lower_has_fixed_root) return false;
  if (upper_has_fixed_root) return true;
  if (lower.estimate != upper.estimate) return lower.estimate < upper.estimate;
  if (lower.total() != upper.total()) return lower.total() < upper.total();
  return true;  // final tie: the lower rank range sends
}

GatherTree build_tree(const ProblemInstance& instance) {
  const std::uint32_t p = instance.p;
  const std::uint32_t rounds = ceil_log2(p);
  const bool fixed = instance.root_mode == RootMode::Fixed;
  const Rank r = instance.fixed_root;

  GatherTree tree;
  tree.p = p;
  tree.mode = instance.root_mode;
  tree.kind = TreeKind::OrderedHypercube;

  std::vector<CubeSummary> level(p);
  for (Rank i = 0; i < p; ++i) level[i] = CubeSummary{i, 0, instance.sizes[i]};

  for (std::uint32_t d = 0; d < rounds; ++d) {
    const std::uint64_t width = 1ull << d;
    const std::uint32_t next_count =
        static_cast<std::uint32_t>((static_cast<std::uint64_t>(p) + 2 * width - 1) / (2 * width));
    std::vector<CubeSummary> next(next_count);
    for (std::uint32_t a = 0; a < next_count; ++a) {
      const std::uint32_t lower_idx = 2 * a;
      const std::uint32_t upper_idx = 2 * a + 1;
      const bool has_upper = static_cast<std::uint64_t>(upper_idx) * width < p;
      if (!has_upper) {
        next[a] = level[lower_idx];
        continue;
      }
      const CubeSummary& lower = level[lower_idx];
      const CubeSummary& upper = level[upper_idx];
      const CubeRange lower_range = cube_of(static_cast<Rank>(lower_idx * width), d, p);
      const CubeRange upper_range = cube_of(static_cast<Rank>(upper_idx * width), d, p);
      const bool lower_sends =
          lower_cube_sends(lower, upper, fixed && lower_range.contains(r),
                           fixed && upper_range.contains(r));
      const CubeSummary& sender = lower_sends ? lower : upper;
      const CubeSummary& receiver = lower_sends ? upper : lower;
      const CubeRange& sender_range = lower_sends ? lower_range : upper_range;
      tree.edges.push_back(TreeEdge{sender.gather_root, receiver.gather_root, d,
                                    sender_range.lo(), sender_range.hi(), sender.total()});
      next[a] = CubeSummary{receiver.gather_root, receiver.estimate + sender.total(),
                            receiver.root_size};
    }
    level = std::move(next);
  }

  tree.root = level[0].gather_root;
  if (fixed && tree.root != r) throw Error(Errc::Internal, "fixed root lost during merge");
  canonicalize_tree(tree);
  return tree;
}

Rat predicted_completion(const GatherTree& tree, const ProblemInstance& instance,
                         const CostModel& model) {
  if (tree.mode != RootMode::Auto)
    throw Error(Errc::InvalidArgument,
                "predicted_completion applies to auto-root trees; simulate fixed-root trees");
  if (tree.p != instance.p) throw Error(Errc::InvalidArgument, "tree/instance mismatch");
  return linear_bound(instance, tree.root, model);
}

}  // namespace ogt
