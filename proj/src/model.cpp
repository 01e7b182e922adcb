#include "ogt/model.hpp"

#include <bit>

#include "ogt/tree.hpp"

namespace ogt {

std::uint32_t ceil_log2(std::uint32_t p) {
  if (p == 0) throw Error(Errc::InvalidArgument, "p must be positive");
  return static_cast<std::uint32_t>(std::bit_width(p - 1));
}

CostModel CostModel::create(Rat alpha, Rat beta) {
  if (alpha < 0 || beta < 0)
    throw Error(Errc::InvalidArgument, "alpha and beta must be nonnegative");
  return CostModel{std::move(alpha), std::move(beta)};
}

CostModel CostModel::from_strings(std::string_view alpha, std::string_view beta) {
  return create(rat_from_string(alpha), rat_from_string(beta));
}

Rat message_cost(std::uint64_t size, const CostModel& model) {
  return model.alpha + model.beta * Rat(size);
}

namespace {

void validate_sizes(const std::vector<std::uint64_t>& sizes) {
  if (sizes.empty()) throw Error(Errc::InvalidArgument, "instance needs at least one processor");
  if (sizes.size() > kMaxProcessors)
    throw Error(Errc::Limit, "processor count exceeds supported limit");
  for (std::uint64_t m : sizes)
    if (m > kMaxBlockSize) throw Error(Errc::Limit, "block size exceeds supported limit");
}

}  // namespace

ProblemInstance ProblemInstance::auto_root(std::vector<std::uint64_t> sizes) {
  validate_sizes(sizes);
  ProblemInstance inst;
  inst.p = static_cast<std::uint32_t>(sizes.size());
  inst.sizes = std::move(sizes);
  inst.root_mode = RootMode::Auto;
  return inst;
}

ProblemInstance ProblemInstance::with_fixed_root(std::vector<std::uint64_t> sizes, Rank root) {
  validate_sizes(sizes);
  if (root >= sizes.size()) throw Error(Errc::InvalidArgument, "fixed root out of range");
  ProblemInstance inst;
  inst.p = static_cast<std::uint32_t>(sizes.size());
  inst.sizes = std::move(sizes);
  inst.root_mode = RootMode::Fixed;
  inst.fixed_root = root;
  return inst;
}

std::uint64_t ProblemInstance::total() const {
  std::uint64_t sum = 0;
  for (std::uint64_t m : sizes) sum += m;
  return sum;
}

std::uint64_t ProblemInstance::total_except(Rank r) const {
  if (r >= p) throw Error(Errc::InvalidArgument, "rank out of range");
  return total() - sizes[r];
}

Rat linear_bound(const ProblemInstance& instance, Rank r, const CostModel& model) {
  std::uint32_t d = ceil_log2(instance.p);
  return Rat(d) * model.alpha + model.beta * Rat(instance.total_except(r));
}

Rat penalty_bound(const GatherTree& tree, const std::vector<std::uint64_t>& sizes,
                  const CostModel& model) {
  if (tree.mode != RootMode::Fixed)
    throw Error(Errc::InvalidArgument, "penalty_bound applies to fixed-root trees only");
  if (sizes.size() != tree.p) throw Error(Errc::InvalidArgument, "sizes/tree mismatch");

  // Merge sequence at the root, ascending rounds; rounds in which the root
  // receives nothing do not appear.
  Int best = 0;
  Int prefix = 0;
  for (const TreeEdge& e : tree.edges) {
    if (e.to != tree.root) continue;
    Int term = Int(e.size) - Int(sizes[e.from]) - prefix;
    if (term > best) best = term;
    prefix += e.size;
  }
  return model.beta * Rat(best);
}

Rat theorem_bound(const ProblemInstance& instance, Rank r, const GatherTree& tree,
                  const CostModel& model) {
  if (r >= instance.p) throw Error(Errc::InvalidArgument, "rank out of range");
  std::uint32_t d = ceil_log2(instance.p);
  Rat bound = Rat(3) * Rat(d) * model.alpha + model.beta * Rat(instance.total_except(r));
  if (tree.mode == RootMode::Fixed) bound += penalty_bound(tree, instance.sizes, model);
  return bound;
}

Rat allreduce_unit_cost(std::uint32_t p, const CostModel& model) {
  std::uint32_t d = ceil_log2(p);
  return Rat(d) * (model.alpha + model.beta);
}

}  // namespace ogt
