#include <doctest.h>

#include <algorithm>
#include <cstring>
#include <string>
#include <vector>

#include "ogt.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  ogt_string_free(s);
  return out;
}

const std::vector<uint64_t> kExampleSizes = {1, 0, 2, 3, 4, 2, 0, 0, 1, 7, 5};

}  // namespace

TEST_CASE("c api: model creation and rational validation") {
  ogt_model* model = nullptr;
  CHECK(ogt_model_create("1", "1", &model) == OGT_OK);
  ogt_model_destroy(model);

  CHECK(ogt_model_create("1/3", "0.25", &model) == OGT_OK);
  ogt_model_destroy(model);

  CHECK(ogt_model_create("nonsense", "1", &model) == OGT_ERR_PARSE);
  CHECK(std::strlen(ogt_last_error()) > 0);
  CHECK(ogt_model_create("-1", "1", &model) == OGT_ERR_INVALID_ARGUMENT);
  CHECK(ogt_model_create(nullptr, "1", &model) == OGT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: instance round trip") {
  ogt_instance* inst = nullptr;
  REQUIRE(ogt_instance_create(11, kExampleSizes.data(), 9, &inst) == OGT_OK);
  CHECK(ogt_instance_p(inst) == 11);
  std::vector<uint64_t> buffer(11);
  CHECK(ogt_instance_sizes(inst, buffer.data(), 11) == OGT_OK);
  CHECK(buffer == kExampleSizes);
  CHECK(ogt_instance_sizes(inst, buffer.data(), 5) == OGT_ERR_INVALID_ARGUMENT);
  ogt_instance_destroy(inst);

  CHECK(ogt_instance_create(3, kExampleSizes.data(), 7, &inst) == OGT_ERR_INVALID_ARGUMENT);

  REQUIRE(ogt_instance_generate("decreasing", 4, 10, 5, 0, -1, &inst) == OGT_OK);
  std::vector<uint64_t> gen(4);
  CHECK(ogt_instance_sizes(inst, gen.data(), 4) == OGT_OK);
  CHECK(gen == std::vector<uint64_t>{21, 16, 11, 6});
  ogt_instance_destroy(inst);

  CHECK(ogt_instance_generate("bogus", 4, 10, 5, 0, -1, &inst) == OGT_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: trees serialize, reload and agree across builders") {
  ogt_instance* inst = nullptr;
  REQUIRE(ogt_instance_create(11, kExampleSizes.data(), 9, &inst) == OGT_OK);

  ogt_tree* oracle = nullptr;
  REQUIRE(ogt_tree_build(inst, &oracle) == OGT_OK);
  CHECK(ogt_tree_p(oracle) == 11);
  CHECK(ogt_tree_root(oracle) == 9);
  CHECK(ogt_tree_edge_count(oracle) == 10);

  ogt_tree* distributed = nullptr;
  ogt_trace* trace = nullptr;
  REQUIRE(ogt_tree_build_distributed(inst, &distributed, &trace) == OGT_OK);

  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(ogt_tree_to_json(oracle, &a) == OGT_OK);
  REQUIRE(ogt_tree_to_json(distributed, &b) == OGT_OK);
  std::string oracle_json = take(a);
  CHECK(oracle_json == take(b));

  ogt_tree* reloaded = nullptr;
  REQUIRE(ogt_tree_from_json(oracle_json.c_str(), &reloaded) == OGT_OK);
  char* c = nullptr;
  REQUIRE(ogt_tree_to_json(reloaded, &c) == OGT_OK);
  CHECK(take(c) == oracle_json);

  char* dot = nullptr;
  REQUIRE(ogt_tree_to_dot(oracle, &dot) == OGT_OK);
  CHECK(take(dot).find("digraph") == 0);

  uint64_t messages = 0;
  uint32_t rounds = 0, chain = 0, scalars = 0;
  REQUIRE(ogt_trace_stats(trace, &messages, &rounds, &chain, &scalars) == OGT_OK);
  CHECK(messages == 25);
  CHECK(rounds == 4);
  CHECK(chain == 5);
  CHECK(scalars == 3);
  char* jsonl = nullptr;
  REQUIRE(ogt_trace_to_jsonl(trace, &jsonl) == OGT_OK);
  std::string lines = take(jsonl);
  CHECK(std::count(lines.begin(), lines.end(), '\n') == 25);

  ogt_tree_destroy(oracle);
  ogt_tree_destroy(distributed);
  ogt_tree_destroy(reloaded);
  ogt_trace_destroy(trace);
  ogt_instance_destroy(inst);
}

TEST_CASE("c api: simulation reports") {
  ogt_instance* inst = nullptr;
  REQUIRE(ogt_instance_create(11, kExampleSizes.data(), 9, &inst) == OGT_OK);
  ogt_model* model = nullptr;
  REQUIRE(ogt_model_create("1", "1", &model) == OGT_OK);
  ogt_tree* tree = nullptr;
  REQUIRE(ogt_tree_build(inst, &tree) == OGT_OK);

  ogt_report* report = nullptr;
  REQUIRE(ogt_simulate(tree, inst, model, 0, 0, &report) == OGT_OK);
  char* makespan = nullptr;
  REQUIRE(ogt_report_makespan(report, &makespan) == OGT_OK);
  CHECK(take(makespan) == "25");
  char* penalty = nullptr;
  REQUIRE(ogt_report_penalty_observed(report, &penalty) == OGT_OK);
  CHECK(take(penalty) == "3");
  char* csv = nullptr;
  REQUIRE(ogt_report_events_csv(report, &csv) == OGT_OK);
  CHECK(take(csv).rfind("start,end,from,to,lo,hi,size\n", 0) == 0);
  char* summary = nullptr;
  REQUIRE(ogt_report_summary_json(report, tree, inst, model, &summary) == OGT_OK);
  std::string summary_text = take(summary);
  CHECK(summary_text.find("\"makespan\": \"25\"") != std::string::npos);
  CHECK(summary_text.find("\"theorem_bound\": \"33\"") != std::string::npos);
  char* violations = nullptr;
  uint32_t count = 99;
  REQUIRE(ogt_report_validate(report, tree, inst, model, &violations, &count) == OGT_OK);
  CHECK(count == 0);
  take(violations);
  ogt_report_destroy(report);

  REQUIRE(ogt_simulate(tree, inst, model, 1, 0, &report) == OGT_OK);
  char* construction = nullptr;
  REQUIRE(ogt_report_construction_time(report, &construction) == OGT_OK);
  CHECK(take(construction) == "5");
  ogt_report_destroy(report);

  REQUIRE(ogt_simulate(tree, inst, model, 0, 1, &report) == OGT_OK);
  REQUIRE(ogt_report_makespan(report, &makespan) == OGT_OK);
  CHECK(take(makespan) == "25");
  ogt_report_destroy(report);

  CHECK(ogt_simulate(tree, inst, model, 1, 1, &report) == OGT_ERR_INVALID_ARGUMENT);

  ogt_tree_destroy(tree);
  ogt_model_destroy(model);
  ogt_instance_destroy(inst);
}

TEST_CASE("c api: bench and guideline checks") {
  uint32_t ps[] = {4};
  uint64_t bs[] = {1};
  char* csv1 = nullptr;
  char* csv2 = nullptr;
  REQUIRE(ogt_bench("same", nullptr, ps, 1, bs, 1, "1", "1", 5, 1, -1, 1, "csv", &csv1) ==
          OGT_OK);
  REQUIRE(ogt_bench("same", "", ps, 1, bs, 1, "1", "1", 5, 1, -1, 2, "csv", &csv2) == OGT_OK);
  std::string text = take(csv1);
  CHECK(text == take(csv2));
  CHECK(text.find("same,4,1,1,4,4,tuw,1,1,3,8,") != std::string::npos);

  char* filtered = nullptr;
  REQUIRE(ogt_bench("same", "flat,padded", ps, 1, bs, 1, "1", "1", 5, 1, -1, 1, "csv",
                    &filtered) == OGT_OK);
  std::string filtered_text = take(filtered);
  CHECK(filtered_text.find(",flat,") != std::string::npos);
  CHECK(filtered_text.find(",tuw,") == std::string::npos);

  CHECK(ogt_bench("nope", nullptr, ps, 1, bs, 1, "1", "1", 5, 1, -1, 1, "csv", &csv1) ==
        OGT_ERR_INVALID_ARGUMENT);
  CHECK(ogt_bench("same", "warp-drive", ps, 1, bs, 1, "1", "1", 5, 1, -1, 1, "csv", &csv1) ==
        OGT_ERR_INVALID_ARGUMENT);

  char* reports = nullptr;
  uint32_t violations = 99;
  REQUIRE(ogt_check_guidelines("same", 4, 1, 5, 1, -1, "1", "1", 3, &reports, &violations) ==
          OGT_OK);
  CHECK(violations == 0);
  CHECK(take(reports).find("\"guideline\": 2") != std::string::npos);

  // guideline 1 on a non-uniform cell is a usage error
  CHECK(ogt_check_guidelines("random", 4, 10, 5, 1, -1, "1", "1", 1, &reports, &violations) ==
        OGT_ERR_INVALID_ARGUMENT);
}
