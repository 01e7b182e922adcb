#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ogt/model.hpp"
#include "ogt/protocol.hpp"
#include "ogt/tree.hpp"

namespace ogt {

struct SimEvent {
  Rat start;
  Rat end;
  Rank from = 0;
  Rank to = 0;
  Rank lo = 0;
  Rank hi = 0;
  std::uint64_t size = 0;
};

enum class SimOp { Gather, Scatter };

struct SimReport {
  std::uint32_t p = 0;
  Rank root = 0;
  SimOp op = SimOp::Gather;
  std::vector<Rat> per_proc_finish;
  Rat makespan;           // includes the construction phase when simulated
  Rat construction_time;  // 0 when the construction phase is excluded
  std::vector<SimEvent> events;
  Rank root_interval_lo = 0;  // blocks held by the root when the run ends
  Rank root_interval_hi = 0;
  Rat penalty_observed;  // data-phase makespan minus linear_bound

  Rat data_makespan() const { return makespan - construction_time; }
};

enum class ReceiveOrder {
  ByRound,  // canonical: ascending round at every receiver
  ByReady,  // nonblocking style: senders completed in ready order
};

struct SimOptions {
  bool include_construction = false;
  ReceiveOrder order = ReceiveOrder::ByRound;
  // Optional pre-computed trace for the construction phase; avoids re-running
  // the protocol when the caller already has it.
  const ConstructionTrace* trace = nullptr;
};

SimReport execute_gather(const GatherTree& tree, const ProblemInstance& instance,
                         const CostModel& model, const SimOptions& options = {});

// Time-reversed schedule of the gather: edge directions flipped, every node
// serves its children in descending round order. Makespan equals the gather
// data-phase makespan; each processor ends up holding exactly its own block.
SimReport execute_scatter(const GatherTree& tree, const ProblemInstance& instance,
                          const CostModel& model);

// Re-checks every report invariant (1-portedness, transfer timing, interval
// contiguity, final state) plus the bound sandwich
//   beta*sum_{i != root} m_i  <=  data makespan  <=  theorem_bound.
// Violations are returned as data, not thrown.
std::vector<std::string> validate_report(const SimReport& report, const GatherTree& tree,
                                         const ProblemInstance& instance,
                                         const CostModel& model);

// Header: start,end,from,to,lo,hi,size
std::string events_to_csv(const SimReport& report);

}  // namespace ogt
