#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ogt/model.hpp"
#include "ogt/tree.hpp"

namespace ogt {

enum class MsgKind { Exchange, Forward };

// The constant-size payload: gather time estimate, root block size, gather
// root identity. Nothing else ever crosses the control plane.
struct ControlPayload {
  std::uint64_t gather_time_estimate = 0;
  std::uint64_t root_block_size = 0;
  Rank gather_root_id = 0;
};

struct ControlMessage {
  std::uint32_t round = 0;
  Rank from = 0;
  Rank to = 0;
  MsgKind kind = MsgKind::Exchange;
  ControlPayload payload;
};

struct ExpectedReceive {
  std::uint32_t round = 0;
  Rank from = 0;
  std::uint64_t size = 0;
};

struct ProcessorView {
  bool is_gather_root = false;
  Rank gather_root_id = 0;  // last gather root this processor learned of
  std::vector<ExpectedReceive> expected_receives;
};

struct ConstructionTrace {
  std::uint32_t p = 0;
  std::vector<ControlMessage> messages;
  std::uint32_t rounds_used = 0;
  std::uint32_t longest_dependent_chain = 0;
  std::vector<ProcessorView> views;
};

struct ConstructionResult {
  GatherTree tree;
  ConstructionTrace trace;
};

// Runs one state machine per processor, seeded only with (p, rank, own size,
// root mode). The assembled tree equals build_tree(instance) exactly.
ConstructionResult run_construction(const ProblemInstance& instance);

struct TraceStats {
  std::uint64_t message_count = 0;
  std::uint32_t rounds_used = 0;
  std::uint32_t longest_dependent_chain = 0;
  std::uint32_t max_payload_scalars = 0;
};

TraceStats trace_stats(const ConstructionTrace& trace);

// One ControlMessage per line:
// {"round":..,"kind":"exchange","from":..,"to":..,"est":..,"root_size":..,"root":..}
std::string trace_to_jsonl(const ConstructionTrace& trace);

namespace detail {
// Test hook: messages rejected by the filter are dropped before delivery,
// which must surface as a deadlock diagnostic naming the starved round.
using MessageFilter = std::function<bool(const ControlMessage&)>;
ConstructionResult run_construction_filtered(const ProblemInstance& instance,
                                             const MessageFilter& filter);
}  // namespace detail

}  // namespace ogt
