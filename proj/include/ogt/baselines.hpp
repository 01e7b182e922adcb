#pragma once

#include "ogt/model.hpp"
#include "ogt/tree.hpp"

namespace ogt {

// Classic size-oblivious binomial gather tree rooted at r: with
// v = (i - r) mod p, the processor with v mod 2^(k+1) = 2^k sends its
// accumulated blocks to v - 2^k in round k. Payload ranges are consecutive in
// relative ranks and may wrap in absolute ranks.
GatherTree build_binomial_fixed(std::uint32_t p, Rank r);

// Binomial tree with payload sizes filled in from the instance.
GatherTree binomial_tree_with_sizes(const ProblemInstance& instance, Rank r);

// sum over non-root senders of (alpha + beta*m_i); with skip_zero, zero-size
// blocks contribute nothing.
Rat flat_gather_cost(const ProblemInstance& instance, Rank r, const CostModel& model,
                     bool skip_zero);

// allreduce_unit_cost(p) + simulated binomial gather on uniform blocks of
// max_i m_i.
Rat padded_regular_cost(const ProblemInstance& instance, Rank r, const CostModel& model);

// m' = p * max_i m_i.
std::uint64_t padded_total(const ProblemInstance& instance);

}  // namespace ogt
