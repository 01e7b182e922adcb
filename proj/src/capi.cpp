#include "ogt.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>

#include <json.hpp>

#include "ogt/baselines.hpp"
#include "ogt/bench.hpp"
#include "ogt/model.hpp"
#include "ogt/protocol.hpp"
#include "ogt/sim.hpp"
#include "ogt/tree.hpp"
#include "ogt/treebuild.hpp"

struct ogt_model {
  ogt::CostModel model;
};
struct ogt_instance {
  ogt::ProblemInstance inst;
};
struct ogt_tree {
  ogt::GatherTree tree;
};
struct ogt_trace {
  ogt::ConstructionTrace trace;
};
struct ogt_report {
  ogt::SimReport report;
};

namespace {

thread_local std::string g_last_error = "";

ogt_status set_error(const ogt::Error& e) {
  g_last_error = e.what();
  switch (e.code()) {
    case ogt::Errc::InvalidArgument: return OGT_ERR_INVALID_ARGUMENT;
    case ogt::Errc::Parse: return OGT_ERR_PARSE;
    case ogt::Errc::Limit: return OGT_ERR_LIMIT;
    case ogt::Errc::Internal: return OGT_ERR_INTERNAL;
  }
  return OGT_ERR_INTERNAL;
}

template <typename Fn>
ogt_status guarded(Fn&& fn) {
  try {
    fn();
    return OGT_OK;
  } catch (const ogt::Error& e) {
    return set_error(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OGT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return OGT_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw ogt::Error(ogt::Errc::InvalidArgument, what);
}

}  // namespace

extern "C" {

const char* ogt_last_error(void) { return g_last_error.c_str(); }

void ogt_string_free(char* s) { std::free(s); }

ogt_status ogt_model_create(const char* alpha, const char* beta, ogt_model** out) {
  return guarded([&] {
    require(alpha && beta && out, "null argument");
    *out = new ogt_model{ogt::CostModel::from_strings(alpha, beta)};
  });
}

void ogt_model_destroy(ogt_model* model) { delete model; }

ogt_status ogt_instance_create(uint32_t p, const uint64_t* sizes, int64_t root,
                               ogt_instance** out) {
  return guarded([&] {
    require(sizes && out, "null argument");
    std::vector<std::uint64_t> vec(sizes, sizes + p);
    if (root < 0)
      *out = new ogt_instance{ogt::ProblemInstance::auto_root(std::move(vec))};
    else
      *out = new ogt_instance{
          ogt::ProblemInstance::with_fixed_root(std::move(vec), static_cast<ogt::Rank>(root))};
  });
}

ogt_status ogt_instance_generate(const char* dist, uint32_t p, uint64_t b, uint64_t rho,
                                 uint64_t seed, int64_t root, ogt_instance** out) {
  return guarded([&] {
    require(dist && out, "null argument");
    auto kind = ogt::dist_kind_from_name(dist);
    if (!kind) throw ogt::Error(ogt::Errc::InvalidArgument, "unknown distribution name");
    ogt::DistributionSpec spec{*kind, b, rho, seed};
    std::vector<std::uint64_t> sizes = ogt::generate(spec, p);
    if (root < 0)
      *out = new ogt_instance{ogt::ProblemInstance::auto_root(std::move(sizes))};
    else
      *out = new ogt_instance{
          ogt::ProblemInstance::with_fixed_root(std::move(sizes), static_cast<ogt::Rank>(root))};
  });
}

uint32_t ogt_instance_p(const ogt_instance* inst) { return inst ? inst->inst.p : 0; }

ogt_status ogt_instance_sizes(const ogt_instance* inst, uint64_t* buffer, uint32_t buffer_len) {
  return guarded([&] {
    require(inst && buffer, "null argument");
    require(buffer_len >= inst->inst.p, "buffer too small");
    std::copy(inst->inst.sizes.begin(), inst->inst.sizes.end(), buffer);
  });
}

void ogt_instance_destroy(ogt_instance* inst) { delete inst; }

ogt_status ogt_tree_build(const ogt_instance* inst, ogt_tree** out) {
  return guarded([&] {
    require(inst && out, "null argument");
    *out = new ogt_tree{ogt::build_tree(inst->inst)};
  });
}

ogt_status ogt_tree_build_distributed(const ogt_instance* inst, ogt_tree** out,
                                      ogt_trace** trace_out) {
  return guarded([&] {
    require(inst && out, "null argument");
    ogt::ConstructionResult result = ogt::run_construction(inst->inst);
    *out = new ogt_tree{std::move(result.tree)};
    if (trace_out) *trace_out = new ogt_trace{std::move(result.trace)};
  });
}

ogt_status ogt_tree_binomial(const ogt_instance* inst, uint32_t root, ogt_tree** out) {
  return guarded([&] {
    require(inst && out, "null argument");
    *out = new ogt_tree{ogt::binomial_tree_with_sizes(inst->inst, root)};
  });
}

ogt_status ogt_tree_to_json(const ogt_tree* tree, char** out) {
  return guarded([&] {
    require(tree && out, "null argument");
    *out = dup_string(ogt::serialize_tree(tree->tree, ogt::TreeFormat::Json));
  });
}

ogt_status ogt_tree_to_dot(const ogt_tree* tree, char** out) {
  return guarded([&] {
    require(tree && out, "null argument");
    *out = dup_string(ogt::serialize_tree(tree->tree, ogt::TreeFormat::Dot));
  });
}

ogt_status ogt_tree_from_json(const char* json, ogt_tree** out) {
  return guarded([&] {
    require(json && out, "null argument");
    *out = new ogt_tree{ogt::tree_from_json(json)};
  });
}

uint32_t ogt_tree_p(const ogt_tree* tree) { return tree ? tree->tree.p : 0; }
uint32_t ogt_tree_root(const ogt_tree* tree) { return tree ? tree->tree.root : 0; }
uint32_t ogt_tree_edge_count(const ogt_tree* tree) {
  return tree ? static_cast<uint32_t>(tree->tree.edges.size()) : 0;
}

void ogt_tree_destroy(ogt_tree* tree) { delete tree; }

ogt_status ogt_trace_to_jsonl(const ogt_trace* trace, char** out) {
  return guarded([&] {
    require(trace && out, "null argument");
    *out = dup_string(ogt::trace_to_jsonl(trace->trace));
  });
}

ogt_status ogt_trace_stats(const ogt_trace* trace, uint64_t* message_count,
                           uint32_t* rounds_used, uint32_t* longest_dependent_chain,
                           uint32_t* max_payload_scalars) {
  return guarded([&] {
    require(trace, "null argument");
    ogt::TraceStats stats = ogt::trace_stats(trace->trace);
    if (message_count) *message_count = stats.message_count;
    if (rounds_used) *rounds_used = stats.rounds_used;
    if (longest_dependent_chain) *longest_dependent_chain = stats.longest_dependent_chain;
    if (max_payload_scalars) *max_payload_scalars = stats.max_payload_scalars;
  });
}

void ogt_trace_destroy(ogt_trace* trace) { delete trace; }

ogt_status ogt_simulate(const ogt_tree* tree, const ogt_instance* inst, const ogt_model* model,
                        int include_construction, int scatter, ogt_report** out) {
  return guarded([&] {
    require(tree && inst && model && out, "null argument");
    if (scatter) {
      require(!include_construction, "scatter does not take a construction phase");
      *out = new ogt_report{ogt::execute_scatter(tree->tree, inst->inst, model->model)};
    } else {
      ogt::SimOptions opts;
      opts.include_construction = include_construction != 0;
      *out = new ogt_report{ogt::execute_gather(tree->tree, inst->inst, model->model, opts)};
    }
  });
}

ogt_status ogt_report_makespan(const ogt_report* report, char** out) {
  return guarded([&] {
    require(report && out, "null argument");
    *out = dup_string(ogt::rat_to_string(report->report.makespan));
  });
}

ogt_status ogt_report_construction_time(const ogt_report* report, char** out) {
  return guarded([&] {
    require(report && out, "null argument");
    *out = dup_string(ogt::rat_to_string(report->report.construction_time));
  });
}

ogt_status ogt_report_penalty_observed(const ogt_report* report, char** out) {
  return guarded([&] {
    require(report && out, "null argument");
    *out = dup_string(ogt::rat_to_string(report->report.penalty_observed));
  });
}

ogt_status ogt_report_events_csv(const ogt_report* report, char** out) {
  return guarded([&] {
    require(report && out, "null argument");
    *out = dup_string(ogt::events_to_csv(report->report));
  });
}

ogt_status ogt_report_summary_json(const ogt_report* report, const ogt_tree* tree,
                                   const ogt_instance* inst, const ogt_model* model,
                                   char** out) {
  return guarded([&] {
    require(report && tree && inst && model && out, "null argument");
    const ogt::SimReport& r = report->report;
    nlohmann::ordered_json j;
    j["op"] = r.op == ogt::SimOp::Gather ? "gather" : "scatter";
    j["p"] = r.p;
    j["root"] = r.root;
    j["makespan"] = ogt::rat_to_string(r.makespan);
    j["construction_time"] = ogt::rat_to_string(r.construction_time);
    j["data_makespan"] = ogt::rat_to_string(r.data_makespan());
    j["penalty_observed"] = ogt::rat_to_string(r.penalty_observed);
    j["linear_bound"] =
        ogt::rat_to_string(ogt::linear_bound(inst->inst, r.root, model->model));
    j["theorem_bound"] =
        ogt::rat_to_string(ogt::theorem_bound(inst->inst, r.root, tree->tree, model->model));
    j["root_interval"] = {r.root_interval_lo, r.root_interval_hi};
    j["events"] = r.events.size();
    nlohmann::ordered_json finishes = nlohmann::ordered_json::array();
    for (const auto& f : r.per_proc_finish) finishes.push_back(ogt::rat_to_string(f));
    j["per_proc_finish"] = std::move(finishes);
    *out = dup_string(j.dump(2) + "\n");
  });
}

ogt_status ogt_report_validate(const ogt_report* report, const ogt_tree* tree,
                               const ogt_instance* inst, const ogt_model* model, char** out,
                               uint32_t* count) {
  return guarded([&] {
    require(report && tree && inst && model, "null argument");
    std::vector<std::string> violations =
        ogt::validate_report(report->report, tree->tree, inst->inst, model->model);
    if (count) *count = static_cast<uint32_t>(violations.size());
    if (out) {
      nlohmann::json arr = nlohmann::json::array();
      for (const std::string& v : violations) arr.push_back(v);
      *out = dup_string(arr.dump(2) + "\n");
    }
  });
}

void ogt_report_destroy(ogt_report* report) { delete report; }

ogt_status ogt_bench(const char* kinds, const char* algorithms, const uint32_t* p_list,
                     uint32_t p_count, const uint64_t* b_list, uint32_t b_count,
                     const char* alpha, const char* beta, uint64_t rho, uint64_t seed,
                     int64_t root, unsigned jobs, const char* format, char** out) {
  return guarded([&] {
    require(kinds && p_list && b_list && alpha && beta && format && out, "null argument");
    ogt::GridConfig config;
    config.p_list.assign(p_list, p_list + p_count);
    config.b_list.assign(b_list, b_list + b_count);
    std::string_view names(kinds);
    while (!names.empty()) {
      auto comma = names.find(',');
      std::string_view name = names.substr(0, comma);
      auto kind = ogt::dist_kind_from_name(name);
      if (!kind)
        throw ogt::Error(ogt::Errc::InvalidArgument,
                         "unknown distribution name '" + std::string(name) + "'");
      config.kinds.push_back(*kind);
      if (comma == std::string_view::npos) break;
      names.remove_prefix(comma + 1);
    }
    if (algorithms && *algorithms) {
      std::string_view algos(algorithms);
      while (!algos.empty()) {
        auto comma = algos.find(',');
        config.algorithms.emplace_back(algos.substr(0, comma));
        if (comma == std::string_view::npos) break;
        algos.remove_prefix(comma + 1);
      }
    }
    config.model = ogt::CostModel::from_strings(alpha, beta);
    config.seed = seed;
    config.rho = rho;
    if (root >= 0) config.root = static_cast<ogt::Rank>(root);
    config.jobs = jobs;
    std::vector<ogt::GridRow> rows = ogt::run_grid(config);
    std::string_view fmt(format);
    if (fmt == "csv")
      *out = dup_string(ogt::grid_to_csv(rows));
    else if (fmt == "md")
      *out = dup_string(ogt::grid_to_markdown(rows));
    else
      throw ogt::Error(ogt::Errc::InvalidArgument, "format must be csv or md");
  });
}

ogt_status ogt_check_guidelines(const char* dist, uint32_t p, uint64_t b, uint64_t rho,
                                uint64_t seed, int64_t root, const char* alpha,
                                const char* beta, unsigned guidelines, char** out,
                                uint32_t* violations) {
  return guarded([&] {
    require(dist && alpha && beta, "null argument");
    require(guidelines != 0 && (guidelines & ~3u) == 0, "guidelines must be a mask of 1|2");
    auto kind = ogt::dist_kind_from_name(dist);
    if (!kind) throw ogt::Error(ogt::Errc::InvalidArgument, "unknown distribution name");
    ogt::DistributionSpec spec{*kind, b, rho, seed};
    std::optional<ogt::Rank> r;
    if (root >= 0) r = static_cast<ogt::Rank>(root);
    std::vector<ogt::GuidelineReport> reports =
        ogt::check_guidelines(spec, p, r, ogt::CostModel::from_strings(alpha, beta),
                              (guidelines & 1u) != 0, (guidelines & 2u) != 0);
    if (violations) {
      uint32_t count = 0;
      for (const auto& rep : reports)
        if (!rep.satisfied) ++count;
      *violations = count;
    }
    if (out) *out = dup_string(ogt::guideline_reports_to_json(reports));
  });
}

}  // extern "C"
