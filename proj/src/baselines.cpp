#include "ogt/baselines.hpp"

#include <algorithm>

#include "ogt/sim.hpp"

namespace ogt {

GatherTree build_binomial_fixed(std::uint32_t p, Rank r) {
  if (p == 0) throw Error(Errc::InvalidArgument, "p must be positive");
  if (p > kMaxProcessors) throw Error(Errc::Limit, "processor count exceeds supported limit");
  if (r >= p) throw Error(Errc::InvalidArgument, "root out of range");

  GatherTree tree;
  tree.p = p;
  tree.mode = RootMode::Fixed;
  tree.root = r;
  tree.kind = TreeKind::Binomial;

  // Relative rank v = (i - r) mod p; v sends at the round of its lowest set
  // bit, carrying the v-interval [v, v + 2^k - 1] truncated at p.
  for (std::uint32_t v = 1; v < p; ++v) {
    std::uint32_t k = static_cast<std::uint32_t>(std::countr_zero(v));
    std::uint32_t v_hi = std::min<std::uint64_t>(static_cast<std::uint64_t>(v) + (1ull << k), p) - 1;
    Rank from = static_cast<Rank>((static_cast<std::uint64_t>(v) + r) % p);
    Rank to = static_cast<Rank>((static_cast<std::uint64_t>(v) - (1ull << k) + r) % p);
    Rank lo = from;
    Rank hi = static_cast<Rank>((static_cast<std::uint64_t>(v_hi) + r) % p);
    tree.edges.push_back(TreeEdge{from, to, k, lo, hi, 0});
  }
  canonicalize_tree(tree);
  return tree;
}

namespace {

void fill_binomial_sizes(GatherTree& tree, const std::vector<std::uint64_t>& sizes) {
  const std::uint32_t p = tree.p;
  for (TreeEdge& e : tree.edges) {
    std::uint64_t sum = 0;
    Rank block = e.lo;
    std::uint32_t len = e.lo <= e.hi ? e.hi - e.lo + 1 : p - e.lo + e.hi + 1;
    for (std::uint32_t i = 0; i < len; ++i) {
      sum += sizes[block];
      block = static_cast<Rank>((block + 1) % p);
    }
    e.size = sum;
  }
}

}  // namespace

Rat flat_gather_cost(const ProblemInstance& instance, Rank r, const CostModel& model,
                     bool skip_zero) {
  if (r >= instance.p) throw Error(Errc::InvalidArgument, "root out of range");
  Rat total(0);
  for (Rank i = 0; i < instance.p; ++i) {
    if (i == r) continue;
    if (skip_zero && instance.sizes[i] == 0) continue;
    total += message_cost(instance.sizes[i], model);
  }
  return total;
}

std::uint64_t padded_total(const ProblemInstance& instance) {
  std::uint64_t b_max = 0;
  for (std::uint64_t m : instance.sizes) b_max = std::max(b_max, m);
  return static_cast<std::uint64_t>(instance.p) * b_max;
}

Rat padded_regular_cost(const ProblemInstance& instance, Rank r, const CostModel& model) {
  if (r >= instance.p) throw Error(Errc::InvalidArgument, "root out of range");
  if (instance.p == 1) return Rat(0);
  std::uint64_t b_max = 0;
  for (std::uint64_t m : instance.sizes) b_max = std::max(b_max, m);
  ProblemInstance uniform =
      ProblemInstance::with_fixed_root(std::vector<std::uint64_t>(instance.p, b_max), r);
  GatherTree tree = build_binomial_fixed(instance.p, r);
  fill_binomial_sizes(tree, uniform.sizes);
  SimReport report = execute_gather(tree, uniform, model);
  return allreduce_unit_cost(instance.p, model) + report.makespan;
}

GatherTree binomial_tree_with_sizes(const ProblemInstance& instance, Rank r) {
  GatherTree tree = build_binomial_fixed(instance.p, r);
  fill_binomial_sizes(tree, instance.sizes);
  return tree;
}

}  // namespace ogt
