#include "ogt/protocol.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "ogt/hypercube.hpp"
#include "ogt/treebuild.hpp"

namespace ogt {

namespace {

// Everything a processor may use: its seed values plus whatever arrived in
// control messages. Cube ranges, fixed roots and partners are rank arithmetic
// and known to everybody.
struct Processor {
  Rank rank = 0;
  std::uint64_t own_size = 0;

  bool gather_root = true;
  CubeSummary cube;  // valid while this rank is fixed root or gather root of its cube
  std::vector<ExpectedReceive> expected;
  bool has_send = false;
  TreeEdge send_edge;
  Rank last_known_root = 0;
};

struct PendingMessage {
  ControlMessage msg;
  std::uint32_t depth = 0;  // length of the dependent chain ending in this message
};

class Runner {
 public:
  Runner(const ProblemInstance& instance, const detail::MessageFilter& filter)
      : inst_(instance), filter_(filter), p_(instance.p), rounds_(ceil_log2(instance.p)) {
    procs_.resize(p_);
    depth_.assign(p_, 0);
    for (Rank i = 0; i < p_; ++i) {
      Processor& pr = procs_[i];
      pr.rank = i;
      pr.own_size = instance.sizes[i];
      pr.cube = CubeSummary{i, 0, pr.own_size};
      pr.last_known_root = i;
    }
  }

  ConstructionResult run() {
    for (std::uint32_t d = 0; d < rounds_; ++d) run_round(d);
    return assemble();
  }

 private:
  bool is_fixed_root(Rank i, std::uint32_t d) const {
    return fixed_root_of(cube_of(i, d, p_)) == i;
  }

  bool cube_has_fixed_root(const CubeRange& range) const {
    return inst_.root_mode == RootMode::Fixed && range.contains(inst_.fixed_root);
  }

  // The decision both ends replay: true when `mine` loses and must send its
  // data to the peer's gather root.
  bool my_side_sends(std::uint32_t d, Rank rank, const CubeSummary& mine,
                     const CubeSummary& peer) const {
    const std::uint32_t my_index = rank >> d;
    const CubeRange my_range{my_index, d, p_};
    const CubeRange peer_range{my_index ^ 1u, d, p_};
    const bool i_am_lower = (my_index & 1u) == 0;
    const CubeSummary& lower = i_am_lower ? mine : peer;
    const CubeSummary& upper = i_am_lower ? peer : mine;
    const CubeRange& lower_range = i_am_lower ? my_range : peer_range;
    const CubeRange& upper_range = i_am_lower ? peer_range : my_range;
    const bool lower_sends = lower_cube_sends(lower, upper, cube_has_fixed_root(lower_range),
                                              cube_has_fixed_root(upper_range));
    return i_am_lower == lower_sends;
  }

  // A gather root settles the round once it knows the peer triple, whether it
  // learned it from the exchange itself or from a forward.
  void settle_gather_root(Processor& me, std::uint32_t d, const CubeSummary& mine,
                          const CubeSummary& peer) {
    const CubeRange my_range = cube_of(me.rank, d, p_);
    if (my_side_sends(d, me.rank, mine, peer)) {
      me.has_send = true;
      me.send_edge =
          TreeEdge{me.rank, peer.gather_root, d, my_range.lo(), my_range.hi(), mine.total()};
      me.gather_root = false;
      me.last_known_root = peer.gather_root;
    } else {
      me.expected.push_back(ExpectedReceive{d, peer.gather_root, peer.total()});
      me.cube = CubeSummary{me.rank, mine.estimate + peer.total(), mine.root_size};
      me.last_known_root = me.rank;
    }
  }

  void run_round(std::uint32_t d) {
    // Exchange between fixed roots of adjacent cubes. One bidirectional
    // exchange counts as a single dependent operation.
    std::vector<PendingMessage> exchanges;
    for (Rank i = 0; i < p_; ++i) {
      if (!is_fixed_root(i, d)) continue;
      std::optional<Rank> partner = partner_fixed_root(i, d, p_);
      if (!partner) continue;
      ControlMessage msg{d, i, *partner, MsgKind::Exchange,
                         ControlPayload{procs_[i].cube.estimate, procs_[i].cube.root_size,
                                        procs_[i].cube.gather_root}};
      exchanges.push_back(PendingMessage{msg, 0});
    }
    for (PendingMessage& pm : exchanges)
      pm.depth = std::max(depth_[pm.msg.from], depth_[pm.msg.to]) + 1;

    std::vector<const PendingMessage*> inbox(p_, nullptr);
    for (PendingMessage& pm : exchanges) {
      record(pm);
      depth_[pm.msg.from] = std::max(depth_[pm.msg.from], pm.depth);
      if (filter_ && !filter_(pm.msg)) continue;
      inbox[pm.msg.to] = &pm;
      depth_[pm.msg.to] = std::max(depth_[pm.msg.to], pm.depth);
    }

    // Fixed roots digest the exchange, keep their knowledge of the merged
    // cube when they stay fixed root, and forward the opposite triple to
    // their gather root when it did not take part in the exchange itself.
    std::vector<PendingMessage> forwards;
    for (Rank i = 0; i < p_; ++i) {
      if (!is_fixed_root(i, d)) continue;
      std::optional<Rank> partner = partner_fixed_root(i, d, p_);
      if (!partner) continue;
      const PendingMessage* in = inbox[i];
      if (!in || in->msg.from != *partner)
        throw Error(Errc::Internal,
                    "construction deadlock at round " + std::to_string(d) + ": processor " +
                        std::to_string(i) + " waits for exchange from " +
                        std::to_string(*partner));

      Processor& me = procs_[i];
      const CubeSummary mine = me.cube;
      const CubeSummary peer{in->msg.payload.gather_root_id,
                             in->msg.payload.gather_time_estimate,
                             in->msg.payload.root_block_size};
      const bool my_side_loses = my_side_sends(d, i, mine, peer);
      const CubeSummary& winner = my_side_loses ? peer : mine;
      const CubeSummary& loser = my_side_loses ? mine : peer;
      const CubeSummary merged{winner.gather_root, winner.estimate + loser.total(),
                               winner.root_size};

      const Rank g = mine.gather_root;
      if (g == i)
        settle_gather_root(me, d, mine, peer);
      else
        forwards.push_back(PendingMessage{
            ControlMessage{d, i, g, MsgKind::Forward,
                           ControlPayload{peer.estimate, peer.root_size, peer.gather_root}},
            depth_[i] + 1});

      if (fixed_root_of(cube_of(i, d + 1, p_)) == i) me.cube = merged;
    }

    std::vector<const PendingMessage*> fwd_inbox(p_, nullptr);
    for (PendingMessage& pm : forwards) {
      record(pm);
      if (filter_ && !filter_(pm.msg)) continue;
      fwd_inbox[pm.msg.to] = &pm;
      depth_[pm.msg.to] = std::max(depth_[pm.msg.to], pm.depth);
    }

    // Gather roots that sat out the exchange learn the outcome from their
    // fixed root.
    for (Rank g = 0; g < p_; ++g) {
      Processor& me = procs_[g];
      if (!me.gather_root) continue;
      const CubeRange range = cube_of(g, d, p_);
      const Rank f = fixed_root_of(range);
      if (f == g) continue;  // settled in the exchange phase
      if (!partner_fixed_root(f, d, p_)) continue;  // idle round for this cube
      const PendingMessage* in = fwd_inbox[g];
      if (!in || in->msg.from != f)
        throw Error(Errc::Internal,
                    "construction deadlock at round " + std::to_string(d) + ": processor " +
                        std::to_string(g) + " waits for forward from " + std::to_string(f));
      const CubeSummary peer{in->msg.payload.gather_root_id,
                             in->msg.payload.gather_time_estimate,
                             in->msg.payload.root_block_size};
      settle_gather_root(me, d, me.cube, peer);
    }
  }

  void record(const PendingMessage& pm) {
    trace_.messages.push_back(pm.msg);
    chain_ = std::max(chain_, pm.depth);
  }

  ConstructionResult assemble() {
    GatherTree tree;
    tree.p = p_;
    tree.mode = inst_.root_mode;
    tree.kind = TreeKind::OrderedHypercube;
    Rank root = 0;
    std::uint32_t root_count = 0;
    for (const Processor& pr : procs_) {
      if (pr.has_send) tree.edges.push_back(pr.send_edge);
      if (pr.gather_root) {
        root = pr.rank;
        ++root_count;
      }
    }
    if (root_count != 1) throw Error(Errc::Internal, "construction ended without a unique root");
    tree.root = root;
    if (inst_.root_mode == RootMode::Fixed && root != inst_.fixed_root)
      throw Error(Errc::Internal, "construction lost the fixed root");
    canonicalize_tree(tree);

    trace_.p = p_;
    trace_.rounds_used = rounds_;
    trace_.longest_dependent_chain = chain_;
    trace_.views.resize(p_);
    for (Rank i = 0; i < p_; ++i) {
      ProcessorView& view = trace_.views[i];
      view.is_gather_root = procs_[i].gather_root;
      view.gather_root_id = procs_[i].last_known_root;
      view.expected_receives = procs_[i].expected;
    }
    return ConstructionResult{std::move(tree), std::move(trace_)};
  }

  const ProblemInstance& inst_;
  const detail::MessageFilter& filter_;
  std::uint32_t p_;
  std::uint32_t rounds_;
  std::vector<Processor> procs_;
  std::vector<std::uint32_t> depth_;
  std::uint32_t chain_ = 0;
  ConstructionTrace trace_;
};

}  // namespace

ConstructionResult run_construction(const ProblemInstance& instance) {
  static const detail::MessageFilter kNoFilter;
  return Runner(instance, kNoFilter).run();
}

namespace detail {
ConstructionResult run_construction_filtered(const ProblemInstance& instance,
                                             const MessageFilter& filter) {
  return Runner(instance, filter).run();
}
}  // namespace detail

TraceStats trace_stats(const ConstructionTrace& trace) {
  TraceStats stats;
  stats.message_count = trace.messages.size();
  stats.longest_dependent_chain = trace.longest_dependent_chain;
  std::uint32_t max_round = 0;
  for (const ControlMessage& m : trace.messages) max_round = std::max(max_round, m.round + 1);
  stats.rounds_used = max_round;
  stats.max_payload_scalars = trace.messages.empty() ? 0 : 3;
  return stats;
}

std::string trace_to_jsonl(const ConstructionTrace& trace) {
  std::ostringstream out;
  for (const ControlMessage& m : trace.messages) {
    nlohmann::ordered_json j;
    j["round"] = m.round;
    j["kind"] = m.kind == MsgKind::Exchange ? "exchange" : "forward";
    j["from"] = m.from;
    j["to"] = m.to;
    j["est"] = m.payload.gather_time_estimate;
    j["root_size"] = m.payload.root_block_size;
    j["root"] = m.payload.gather_root_id;
    out << j.dump() << "\n";
  }
  return out.str();
}

}  // namespace ogt
