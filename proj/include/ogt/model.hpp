#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ogt/rational.hpp"

namespace ogt {

using Rank = std::uint32_t;

enum class Errc {
  InvalidArgument,
  Parse,
  Limit,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Sanity limits: keep sums of block sizes well inside 64 bits.
inline constexpr std::uint32_t kMaxProcessors = 1u << 24;
inline constexpr std::uint64_t kMaxBlockSize = 1ull << 38;

// Smallest d with 2^d >= p.
std::uint32_t ceil_log2(std::uint32_t p);

// Linear transmission cost alpha + beta*m.
struct CostModel {
  Rat alpha;
  Rat beta;

  static CostModel create(Rat alpha, Rat beta);
  static CostModel from_strings(std::string_view alpha, std::string_view beta);
};

Rat message_cost(std::uint64_t size, const CostModel& model);

enum class RootMode { Auto, Fixed };

struct ProblemInstance {
  std::uint32_t p = 0;
  std::vector<std::uint64_t> sizes;
  RootMode root_mode = RootMode::Auto;
  Rank fixed_root = 0;  // valid only in Fixed mode

  static ProblemInstance auto_root(std::vector<std::uint64_t> sizes);
  static ProblemInstance with_fixed_root(std::vector<std::uint64_t> sizes, Rank root);

  std::uint64_t total() const;
  std::uint64_t total_except(Rank r) const;
};

struct GatherTree;  // tree.hpp

// ceil(log2 p)*alpha + beta * sum_{i != r} m_i.
Rat linear_bound(const ProblemInstance& instance, Rank r, const CostModel& model);

// Largest clamped delay term of the root's merge sequence, scaled by beta.
// Only defined for fixed-root trees.
Rat penalty_bound(const GatherTree& tree, const std::vector<std::uint64_t>& sizes,
                  const CostModel& model);

// 3*ceil(log2 p)*alpha + beta*sum_{i != r} m_i, plus the penalty term for
// fixed-root trees.
Rat theorem_bound(const ProblemInstance& instance, Rank r, const GatherTree& tree,
                  const CostModel& model);

// ceil(log2 p) butterfly rounds, one unit each way.
Rat allreduce_unit_cost(std::uint32_t p, const CostModel& model);

}  // namespace ogt
