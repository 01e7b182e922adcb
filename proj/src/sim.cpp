#include "ogt/sim.hpp"

#include <algorithm>
#include <sstream>

namespace ogt {

namespace {

Rat transfer_cost(std::uint64_t size, const CostModel& model) {
  // Zero-size edges mark merges with no actual communication.
  if (size == 0) return Rat(0);
  return message_cost(size, model);
}

// Events are emitted in causal order; a stable sort by time keeps dependent
// zero-duration chains (same instant) causally ordered.
void sort_events(std::vector<SimEvent>& events) {
  std::stable_sort(events.begin(), events.end(), [](const SimEvent& a, const SimEvent& b) {
    if (a.start != b.start) return a.start < b.start;
    return a.end < b.end;
  });
}

Rat construction_time_for(const ProblemInstance& instance, const CostModel& model,
                          const ConstructionTrace* trace) {
  if (trace) return Rat(trace->longest_dependent_chain) * model.alpha;
  ConstructionResult result = run_construction(instance);
  return Rat(result.trace.longest_dependent_chain) * model.alpha;
}

struct Schedule {
  std::vector<SimEvent> events;
  std::vector<Rat> finish;  // per processor, last activity end
  Rat makespan;
};

Schedule run_gather_schedule(const GatherTree& tree, const ProblemInstance&,
                             const CostModel& model, ReceiveOrder order) {
  const std::uint32_t p = tree.p;
  std::vector<std::vector<const TreeEdge*>> children(p);
  for (const TreeEdge& e : tree.edges) children[e.to].push_back(&e);
  for (auto& list : children)
    std::sort(list.begin(), list.end(),
              [](const TreeEdge* a, const TreeEdge* b) { return a->round < b->round; });

  Schedule s;
  s.finish.assign(p, Rat(0));
  std::vector<Rat> ready(p, Rat(0));

  // Post-order: a node's receives are sequential at its port; its send is its
  // last action and the parent's problem.
  auto process = [&](auto&& self, Rank v) -> void {
    for (const TreeEdge* e : children[v]) self(self, e->from);
    std::vector<const TreeEdge*> in_order = children[v];
    if (order == ReceiveOrder::ByReady) {
      std::sort(in_order.begin(), in_order.end(), [&](const TreeEdge* a, const TreeEdge* b) {
        if (ready[a->from] != ready[b->from]) return ready[a->from] < ready[b->from];
        return a->round < b->round;
      });
    }
    Rat port(0);
    for (const TreeEdge* e : in_order) {
      Rat start = std::max(port, ready[e->from]);
      Rat end = start + transfer_cost(e->size, model);
      s.events.push_back(SimEvent{start, end, e->from, e->to, e->lo, e->hi, e->size});
      s.finish[e->from] = end;
      port = end;
    }
    ready[v] = port;
  };
  process(process, tree.root);
  s.finish[tree.root] = ready[tree.root];
  s.makespan = ready[tree.root];
  sort_events(s.events);
  return s;
}

}  // namespace

SimReport execute_gather(const GatherTree& tree, const ProblemInstance& instance,
                         const CostModel& model, const SimOptions& options) {
  validate_tree(tree, instance);

  Rat construction(0);
  if (options.include_construction) {
    if (tree.kind != TreeKind::OrderedHypercube)
      throw Error(Errc::InvalidArgument, "construction phase applies to ordered trees only");
    if (instance.root_mode != tree.mode)
      throw Error(Errc::InvalidArgument,
                  "construction phase needs the instance that produced the tree");
    construction = construction_time_for(instance, model, options.trace);
  }

  Schedule s = run_gather_schedule(tree, instance, model, options.order);

  SimReport report;
  report.p = tree.p;
  report.root = tree.root;
  report.op = SimOp::Gather;
  report.construction_time = construction;
  report.events = std::move(s.events);
  if (construction != 0) {
    for (SimEvent& e : report.events) {
      e.start += construction;
      e.end += construction;
    }
    for (Rat& f : s.finish) f += construction;
  }
  report.per_proc_finish = std::move(s.finish);
  report.makespan = s.makespan + construction;
  report.root_interval_lo = 0;
  report.root_interval_hi = tree.p - 1;
  report.penalty_observed = s.makespan - linear_bound(instance, tree.root, model);
  return report;
}

SimReport execute_scatter(const GatherTree& tree, const ProblemInstance& instance,
                          const CostModel& model) {
  validate_tree(tree, instance);
  const std::uint32_t p = tree.p;

  std::vector<std::vector<const TreeEdge*>> children(p);
  for (const TreeEdge& e : tree.edges) children[e.to].push_back(&e);
  // Reversed round order: the root serves its last-merged child first.
  for (auto& list : children)
    std::sort(list.begin(), list.end(),
              [](const TreeEdge* a, const TreeEdge* b) { return a->round > b->round; });

  SimReport report;
  report.p = p;
  report.root = tree.root;
  report.op = SimOp::Scatter;
  report.construction_time = Rat(0);
  report.per_proc_finish.assign(p, Rat(0));

  Rat makespan(0);
  auto process = [&](auto&& self, Rank v, Rat port) -> void {
    for (const TreeEdge* e : children[v]) {
      Rat start = port;  // the child idles until its single receive
      Rat end = start + transfer_cost(e->size, model);
      report.events.push_back(SimEvent{start, end, e->to, e->from, e->lo, e->hi, e->size});
      port = end;
      report.per_proc_finish[v] = std::max(report.per_proc_finish[v], end);
      report.per_proc_finish[e->from] = std::max(report.per_proc_finish[e->from], end);
      makespan = std::max(makespan, end);
      self(self, e->from, end);
    }
  };
  process(process, tree.root, Rat(0));

  report.makespan = makespan;
  report.root_interval_lo = tree.root;
  report.root_interval_hi = tree.root;
  report.penalty_observed = makespan - linear_bound(instance, tree.root, model);
  sort_events(report.events);
  return report;
}

namespace {

// Cyclic block interval; binomial trees wrap, ordered-hypercube trees do not.
struct Held {
  Rank start = 0;
  std::uint32_t len = 0;
};

std::uint32_t interval_len(Rank lo, Rank hi, std::uint32_t p) {
  if (lo <= hi) return hi - lo + 1;
  return p - lo + hi + 1;
}

}  // namespace

std::vector<std::string> validate_report(const SimReport& report, const GatherTree& tree,
                                         const ProblemInstance& instance,
                                         const CostModel& model) {
  std::vector<std::string> violations;
  auto flag = [&](const std::string& text) { violations.push_back(text); };

  try {
    validate_tree(tree, instance);
  } catch (const Error& e) {
    flag(std::string("tree: ") + e.what());
    return violations;
  }
  const std::uint32_t p = tree.p;
  if (report.p != p || report.root != tree.root) {
    flag("report does not match tree");
    return violations;
  }
  const bool gather = report.op == SimOp::Gather;
  const bool cyclic = tree.kind == TreeKind::Binomial;

  // The event list is replayed as given: the report's order is the schedule.
  // Per processor it is always chronological; zero-duration chains at one
  // instant stay in causal order.
  const std::vector<SimEvent>& events = report.events;

  // Transfer timing: every transfer starts exactly at
  // max(sender_ready, receiver_ready) and lasts message_cost(size); starting
  // earlier is a 1-port violation.
  std::vector<Rat> avail(p, report.construction_time);
  for (const SimEvent& e : events) {
    if (e.from >= p || e.to >= p) {
      flag("event rank out of range");
      continue;
    }
    Rat expected_start = std::max(avail[e.from], avail[e.to]);
    if (e.start < expected_start)
      flag("1-port violation: transfer " + std::to_string(e.from) + "->" + std::to_string(e.to) +
           " overlaps earlier activity");
    else if (e.start > expected_start)
      flag("transfer " + std::to_string(e.from) + "->" + std::to_string(e.to) +
           " does not start at max(sender_ready, receiver_ready)");
    Rat dur = e.size == 0 ? Rat(0) : message_cost(e.size, model);
    if (e.end - e.start != dur)
      flag("transfer " + std::to_string(e.from) + "->" + std::to_string(e.to) +
           " duration differs from message_cost");
    avail[e.from] = std::max(avail[e.from], e.end);
    avail[e.to] = std::max(avail[e.to], e.end);
  }

  // Block bookkeeping: gather merges keep every held set one consecutive
  // interval; scatter peels a prefix or suffix off the sender.
  std::vector<Held> held(p);
  if (gather) {
    for (Rank i = 0; i < p; ++i) held[i] = Held{i, 1};
  } else {
    for (Rank i = 0; i < p; ++i) held[i] = Held{0, 0};
    held[tree.root] = Held{0, p};
  }
  for (const SimEvent& e : events) {
    if (e.from >= p || e.to >= p) continue;
    if (!cyclic && e.lo > e.hi) {
      flag("payload range wraps in an ordered tree");
      continue;
    }
    std::uint32_t plen = interval_len(e.lo, e.hi, p);
    Held& src = held[e.from];
    Held& dst = held[e.to];
    if (gather) {
      if (src.len != plen || src.start != e.lo) {
        flag("sender " + std::to_string(e.from) + " does not hold exactly the payload range");
        continue;
      }
      if (dst.len == 0) {
        dst = Held{e.lo, plen};
      } else if ((dst.start + dst.len) % p == e.lo % p) {
        dst.len += plen;
      } else if ((e.lo + plen) % p == dst.start % p) {
        dst.start = e.lo;
        dst.len += plen;
      } else {
        flag("receiver " + std::to_string(e.to) + " held set becomes non-consecutive");
        continue;
      }
      if (!cyclic && dst.len < p && static_cast<std::uint64_t>(dst.start) + dst.len > p)
        flag("receiver " + std::to_string(e.to) + " held interval wraps");
      src.len = 0;
    } else {
      if (src.len < plen) {
        flag("scatter sender " + std::to_string(e.from) + " does not hold the payload");
        continue;
      }
      if (src.start == e.lo) {
        src.start = static_cast<Rank>((src.start + plen) % p);
        src.len -= plen;
      } else if ((e.lo + plen) % p == (src.start + src.len) % p) {
        src.len -= plen;
      } else {
        flag("scatter payload is not a prefix or suffix of the sender's held interval");
        continue;
      }
      if (dst.len != 0)
        flag("scatter receiver " + std::to_string(e.to) + " receives twice");
      dst = Held{e.lo, plen};
    }
  }
  if (gather) {
    if (!(held[tree.root].len == p))
      flag("root does not end holding all blocks");
    std::uint32_t expected_lo = report.root_interval_lo;
    std::uint32_t expected_hi = report.root_interval_hi;
    if (interval_len(expected_lo, expected_hi, p) != p)
      flag("reported root interval is not the full range");
  } else {
    for (Rank i = 0; i < p; ++i) {
      if (!(held[i].len == 1 && held[i].start == i)) {
        flag("processor " + std::to_string(i) + " does not end holding exactly its own block");
        break;
      }
    }
  }

  // Reported aggregates.
  Rat max_finish = report.construction_time;
  if (report.per_proc_finish.size() != p) {
    flag("per_proc_finish has wrong length");
  } else {
    std::vector<Rat> finish(p, report.construction_time);
    for (const SimEvent& e : events) {
      if (e.from < p) finish[e.from] = std::max(finish[e.from], e.end);
      if (e.to < p) finish[e.to] = std::max(finish[e.to], e.end);
    }
    for (Rank i = 0; i < p; ++i) {
      if (report.per_proc_finish[i] != finish[i]) {
        flag("per_proc_finish inconsistent with events");
        break;
      }
      max_finish = std::max(max_finish, finish[i]);
    }
  }
  if (report.makespan != max_finish) flag("makespan inconsistent with events");

  // Bound sandwich on the data phase.
  Rat data = report.makespan - report.construction_time;
  Rat lower = model.beta * Rat(instance.total_except(tree.root));
  if (data < lower) flag("data-phase makespan below beta * sum of non-root blocks");
  Rat upper = theorem_bound(instance, tree.root, tree, model);
  if (data > upper) flag("data-phase makespan exceeds theorem bound");
  if (report.penalty_observed != data - linear_bound(instance, tree.root, model))
    flag("penalty_observed inconsistent with makespan and linear bound");

  return violations;
}

std::string events_to_csv(const SimReport& report) {
  std::ostringstream out;
  out << "start,end,from,to,lo,hi,size\n";
  for (const SimEvent& e : report.events) {
    out << rat_to_string(e.start) << ',' << rat_to_string(e.end) << ',' << e.from << ',' << e.to
        << ',' << e.lo << ',' << e.hi << ',' << e.size << "\n";
  }
  return out.str();
}

}  // namespace ogt
