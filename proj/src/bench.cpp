#include "ogt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ogt/baselines.hpp"
#include "ogt/protocol.hpp"
#include "ogt/sim.hpp"
#include "ogt/treebuild.hpp"

namespace ogt {

const char* dist_kind_name(DistKind kind) {
  switch (kind) {
    case DistKind::Same: return "same";
    case DistKind::Random: return "random";
    case DistKind::Spikes: return "spikes";
    case DistKind::Decreasing: return "decreasing";
    case DistKind::Alternating: return "alternating";
    case DistKind::TwoBlocks: return "two_blocks";
  }
  return "?";
}

std::optional<DistKind> dist_kind_from_name(std::string_view name) {
  if (name == "same") return DistKind::Same;
  if (name == "random") return DistKind::Random;
  if (name == "spikes") return DistKind::Spikes;
  if (name == "decreasing") return DistKind::Decreasing;
  if (name == "alternating") return DistKind::Alternating;
  if (name == "two_blocks") return DistKind::TwoBlocks;
  return std::nullopt;
}

namespace {

// splitmix64; fixed so that identical seeds give identical vectors on every
// platform.
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t stream_seed(const DistributionSpec& spec, std::uint32_t p) {
  std::uint64_t s = spec.seed;
  std::uint64_t kind_salt = static_cast<std::uint64_t>(spec.kind) + 1;
  s ^= splitmix64(kind_salt);
  std::uint64_t p_salt = p;
  s ^= splitmix64(p_salt);
  return s;
}

}  // namespace

std::vector<std::uint64_t> generate(const DistributionSpec& spec, std::uint32_t p) {
  if (p == 0) throw Error(Errc::InvalidArgument, "p must be positive");
  if (p > kMaxProcessors) throw Error(Errc::Limit, "processor count exceeds supported limit");
  if (spec.b < 1) throw Error(Errc::InvalidArgument, "average block size b must be >= 1");
  if (spec.b > kMaxBlockSize / 8) throw Error(Errc::Limit, "b exceeds supported limit");
  if (spec.kind == DistKind::Spikes) {
    if (spec.rho < 2) throw Error(Errc::InvalidArgument, "spikes requires integer rho >= 2");
    if (spec.rho > kMaxBlockSize / spec.b)
      throw Error(Errc::Limit, "rho*b exceeds the supported block size limit");
  }

  std::vector<std::uint64_t> sizes(p);
  std::uint64_t state = stream_seed(spec, p);
  switch (spec.kind) {
    case DistKind::Same:
      std::fill(sizes.begin(), sizes.end(), spec.b);
      break;
    case DistKind::Random:
      for (auto& m : sizes) m = 1 + splitmix64(state) % (2 * spec.b);
      break;
    case DistKind::Spikes:
      for (auto& m : sizes)
        m = (splitmix64(state) % spec.rho == 0) ? spec.rho * spec.b : 1;
      break;
    case DistKind::Decreasing:
      for (std::uint32_t i = 0; i < p; ++i)
        sizes[i] = (2 * spec.b * static_cast<std::uint64_t>(p - i)) / p + 1;
      break;
    case DistKind::Alternating:
      for (std::uint32_t i = 0; i < p; ++i)
        sizes[i] = (i % 2 == 0) ? spec.b + spec.b / 2 : spec.b - spec.b / 2;
      break;
    case DistKind::TwoBlocks:
      std::fill(sizes.begin(), sizes.end(), 0);
      sizes[0] = spec.b;
      sizes[p - 1] = spec.b;
      break;
  }
  return sizes;
}

namespace {

struct CellResult {
  std::vector<GridRow> rows;
};

CellResult evaluate_cell(DistKind kind, std::uint32_t p, std::uint64_t b,
                         const GridConfig& config) {
  DistributionSpec spec{kind, b, config.rho, config.seed};
  std::vector<std::uint64_t> sizes = generate(spec, p);
  const Rank r = config.root.value_or(static_cast<Rank>(p / 2));
  if (r >= p) throw Error(Errc::InvalidArgument, "grid root out of range");
  const CostModel& model = config.model;

  ProblemInstance fixed = ProblemInstance::with_fixed_root(sizes, r);
  ProblemInstance autoinst = ProblemInstance::auto_root(sizes);

  std::uint64_t m = fixed.total();
  std::uint64_t m_prime = padded_total(fixed);
  const bool uniform =
      std::all_of(sizes.begin(), sizes.end(), [&](std::uint64_t v) { return v == sizes[0]; });

  struct AlgoResult {
    Rat construction{0};
    Rat total{0};
    Rat linear{0};
    Rat theorem{0};
    Rat penalty{0};
  };
  std::map<std::string, AlgoResult> results;

  // tuw: distributed construction plus simulated data phase at the fixed root.
  ConstructionResult tuw = run_construction(fixed);
  SimOptions opts;
  opts.include_construction = true;
  opts.trace = &tuw.trace;
  SimReport tuw_report = execute_gather(tuw.tree, fixed, model, opts);
  AlgoResult tuw_res;
  tuw_res.construction = tuw_report.construction_time;
  tuw_res.total = tuw_report.makespan;
  tuw_res.linear = linear_bound(fixed, r, model);
  tuw_res.theorem = theorem_bound(fixed, r, tuw.tree, model);
  tuw_res.penalty = tuw_report.penalty_observed;
  results["tuw"] = tuw_res;

  ConstructionResult tuw_auto = run_construction(autoinst);
  SimOptions auto_opts;
  auto_opts.include_construction = true;
  auto_opts.trace = &tuw_auto.trace;
  SimReport auto_report = execute_gather(tuw_auto.tree, autoinst, model, auto_opts);
  AlgoResult auto_res;
  auto_res.construction = auto_report.construction_time;
  auto_res.total = auto_report.makespan;
  auto_res.linear = linear_bound(autoinst, tuw_auto.tree.root, model);
  auto_res.theorem = theorem_bound(autoinst, tuw_auto.tree.root, tuw_auto.tree, model);
  auto_res.penalty = auto_report.penalty_observed;
  results["tuw-auto"] = auto_res;

  GatherTree btree = binomial_tree_with_sizes(fixed, r);
  SimReport breport = execute_gather(btree, fixed, model);
  AlgoResult bres;
  bres.total = breport.makespan;
  bres.linear = tuw_res.linear;
  bres.theorem = tuw_res.theorem;
  bres.penalty = breport.penalty_observed;
  results["binomial"] = bres;

  AlgoResult flat_res;
  flat_res.total = flat_gather_cost(fixed, r, model, false);
  flat_res.linear = tuw_res.linear;
  flat_res.theorem = tuw_res.theorem;
  flat_res.penalty = flat_res.total - flat_res.linear;
  results["flat"] = flat_res;

  AlgoResult skip_res = flat_res;
  skip_res.total = flat_gather_cost(fixed, r, model, true);
  skip_res.penalty = skip_res.total - skip_res.linear;
  results["flat-skip0"] = skip_res;

  AlgoResult padded_res;
  padded_res.construction = allreduce_unit_cost(p, model);
  padded_res.total = padded_regular_cost(fixed, r, model);
  padded_res.linear = tuw_res.linear;
  padded_res.theorem = tuw_res.theorem;
  padded_res.penalty = (padded_res.total - padded_res.construction) - padded_res.linear;
  results["padded"] = padded_res;

  const Rat g2_rhs = padded_res.total;
  const Rat g1_lhs = bres.total;

  CellResult cell;
  for (const char* name : kAlgorithms) {
    const AlgoResult& a = results[name];
    GridRow row;
    row.kind = kind;
    row.p = p;
    row.b = b;
    row.seed = config.seed;
    row.m = m;
    row.m_prime = m_prime;
    row.algorithm = name;
    row.alpha = model.alpha;
    row.beta = model.beta;
    row.construction_time = a.construction;
    row.makespan = a.total;
    row.linear_bound = a.linear;
    row.theorem_bound = a.theorem;
    row.penalty_observed = a.penalty;
    row.g1_applicable = uniform;
    row.g1_violation = uniform && g1_lhs > a.total;
    row.g2_violation = a.total > g2_rhs;
    cell.rows.push_back(std::move(row));
  }
  return cell;
}

int kind_order(DistKind kind) { return static_cast<int>(kind); }

}  // namespace

std::vector<GridRow> run_grid(const GridConfig& config) {
  if (config.p_list.empty()) throw Error(Errc::InvalidArgument, "empty p list");
  if (config.b_list.empty()) throw Error(Errc::InvalidArgument, "empty b list");
  if (config.kinds.empty()) throw Error(Errc::InvalidArgument, "empty distribution list");
  for (const std::string& name : config.algorithms) {
    bool known = false;
    for (const char* a : kAlgorithms) known = known || name == a;
    if (!known) throw Error(Errc::InvalidArgument, "unknown algorithm '" + name + "'");
  }

  struct Cell {
    DistKind kind;
    std::uint32_t p;
    std::uint64_t b;
  };
  std::vector<Cell> cells;
  std::uint64_t budget = 0;
  std::vector<DistKind> kinds = config.kinds;
  std::sort(kinds.begin(), kinds.end(),
            [](DistKind a, DistKind b) { return kind_order(a) < kind_order(b); });
  kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
  std::vector<std::uint32_t> ps = config.p_list;
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  std::vector<std::uint64_t> bs = config.b_list;
  std::sort(bs.begin(), bs.end());
  bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  for (DistKind kind : kinds)
    for (std::uint32_t p : ps)
      for (std::uint64_t b : bs) {
        cells.push_back(Cell{kind, p, b});
        budget += p;
      }
  if (budget > config.cell_budget)
    throw Error(Errc::Limit, "grid too large: sum of p over cells exceeds the configured budget");

  std::vector<CellResult> partial(cells.size());
  unsigned jobs = std::max(1u, config.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      partial[i] = evaluate_cell(cells[i].kind, cells[i].p, cells[i].b, config);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        try {
          partial[i] = evaluate_cell(cells[i].kind, cells[i].p, cells[i].b, config);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  std::vector<GridRow> rows;
  for (CellResult& cell : partial)
    for (GridRow& row : cell.rows) {
      if (!config.algorithms.empty() &&
          std::find(config.algorithms.begin(), config.algorithms.end(), row.algorithm) ==
              config.algorithms.end())
        continue;
      rows.push_back(std::move(row));
    }
  return rows;
}

std::string grid_to_csv(const std::vector<GridRow>& rows) {
  std::ostringstream out;
  out << "problem,p,b,seed,m,m_prime,algorithm,alpha,beta,construction_time,makespan,"
         "linear_bound,theorem_bound,penalty_observed,g1_violation,g2_violation\n";
  for (const GridRow& row : rows) {
    out << dist_kind_name(row.kind) << ',' << row.p << ',' << row.b << ',' << row.seed << ','
        << row.m << ',' << row.m_prime << ',' << row.algorithm << ','
        << rat_to_string(row.alpha) << ',' << rat_to_string(row.beta) << ','
        << rat_to_string(row.construction_time) << ',' << rat_to_string(row.makespan) << ','
        << rat_to_string(row.linear_bound) << ',' << rat_to_string(row.theorem_bound) << ','
        << rat_to_string(row.penalty_observed) << ',' << (row.g1_violation ? 1 : 0) << ','
        << (row.g2_violation ? 1 : 0) << "\n";
  }
  return out.str();
}

std::string grid_to_markdown(const std::vector<GridRow>& rows) {
  // One table per p, mirroring the tabular layout of per-algorithm columns.
  std::ostringstream out;
  std::vector<std::uint32_t> ps;
  for (const GridRow& row : rows)
    if (std::find(ps.begin(), ps.end(), row.p) == ps.end()) ps.push_back(row.p);
  std::sort(ps.begin(), ps.end());

  for (std::uint32_t p : ps) {
    out << "## p = " << p << "\n\n";
    out << "| problem | b | m | m' |";
    for (const char* name : kAlgorithms) out << ' ' << name << " |";
    out << "\n|---|---|---|---|";
    for (std::size_t i = 0; i < std::size(kAlgorithms); ++i) out << "---|";
    out << "\n";
    // group rows of this p by (kind, b); algorithm order is fixed
    for (std::size_t i = 0; i < rows.size();) {
      if (rows[i].p != p) {
        ++i;
        continue;
      }
      const GridRow& head = rows[i];
      out << "| " << dist_kind_name(head.kind) << " | " << head.b << " | " << head.m << " | "
          << head.m_prime << " |";
      for (const char* name : kAlgorithms) {
        bool found = false;
        for (std::size_t j = i; j < rows.size() && rows[j].p == p && rows[j].kind == head.kind &&
                                rows[j].b == head.b;
             ++j) {
          if (rows[j].algorithm == name) {
            out << ' ' << rat_to_string(rows[j].makespan);
            if (rows[j].g2_violation) out << " (!g2)";
            if (rows[j].g1_violation) out << " (!g1)";
            out << " |";
            found = true;
            break;
          }
        }
        if (!found) out << " - |";
      }
      out << "\n";
      std::size_t j = i;
      while (j < rows.size() && rows[j].p == p && rows[j].kind == head.kind &&
             rows[j].b == head.b)
        ++j;
      i = j;
    }
    out << "\n";
  }
  return out.str();
}

std::vector<GuidelineReport> check_guidelines(const DistributionSpec& spec, std::uint32_t p,
                                              std::optional<Rank> root, const CostModel& model,
                                              bool guideline1, bool guideline2) {
  GridConfig config;
  config.p_list = {p};
  config.b_list = {spec.b};
  config.kinds = {spec.kind};
  config.model = model;
  config.seed = spec.seed;
  config.rho = spec.rho;
  config.root = root;
  std::vector<GridRow> rows = run_grid(config);

  const bool uniform = rows.front().g1_applicable;
  if (guideline1 && !uniform)
    throw Error(Errc::InvalidArgument,
                "guideline 1 applies to uniform block sizes only (m_i = m/p)");

  Rat g1_lhs(0), g2_rhs(0);
  for (const GridRow& row : rows) {
    if (row.algorithm == "binomial") g1_lhs = row.makespan;
    if (row.algorithm == "padded") g2_rhs = row.makespan;
  }

  auto ratio_of = [](const Rat& lhs, const Rat& rhs) {
    if (rhs == 0) return Rat(1);
    return Rat(lhs / rhs);
  };

  std::vector<GuidelineReport> reports;
  for (const GridRow& row : rows) {
    auto echo = [&](GuidelineReport& rep) {
      rep.algorithm = row.algorithm;
      rep.kind = row.kind;
      rep.p = row.p;
      rep.b = row.b;
      rep.seed = row.seed;
      rep.alpha = row.alpha;
      rep.beta = row.beta;
      rep.m = row.m;
      rep.m_prime = row.m_prime;
    };
    if (guideline1) {
      GuidelineReport rep;
      rep.guideline = kGuideline1;
      rep.lhs_time = g1_lhs;
      rep.rhs_time = row.makespan;
      rep.satisfied = rep.lhs_time <= rep.rhs_time;
      rep.ratio = ratio_of(rep.lhs_time, rep.rhs_time);
      echo(rep);
      reports.push_back(std::move(rep));
    }
    if (guideline2) {
      GuidelineReport rep;
      rep.guideline = kGuideline2;
      rep.lhs_time = row.makespan;
      rep.rhs_time = g2_rhs;
      rep.satisfied = rep.lhs_time <= rep.rhs_time;
      rep.ratio = ratio_of(rep.lhs_time, rep.rhs_time);
      echo(rep);
      reports.push_back(std::move(rep));
    }
  }
  return reports;
}

std::string guideline_reports_to_json(const std::vector<GuidelineReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const GuidelineReport& rep : reports) {
    nlohmann::ordered_json j;
    j["guideline"] = rep.guideline;
    j["algorithm"] = rep.algorithm;
    j["lhs_time"] = rat_to_string(rep.lhs_time);
    j["rhs_time"] = rat_to_string(rep.rhs_time);
    j["satisfied"] = rep.satisfied;
    j["ratio"] = rat_to_string(rep.ratio);
    j["problem"] = dist_kind_name(rep.kind);
    j["p"] = rep.p;
    j["b"] = rep.b;
    j["seed"] = rep.seed;
    j["alpha"] = rat_to_string(rep.alpha);
    j["beta"] = rat_to_string(rep.beta);
    j["m"] = rep.m;
    j["m_prime"] = rep.m_prime;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace ogt
