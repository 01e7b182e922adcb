// ogt command line: tree construction, schedule simulation, benchmark grids
// and performance-guideline checks. Talks to the core library through the C
// API only.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ogt.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitConfig = 2;

struct CliError {
  std::string message;
};

[[noreturn]] void fail(const std::string& message) { throw CliError{message}; }

void check(ogt_status status) {
  if (status != OGT_OK) fail(ogt_last_error());
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  ogt_string_free(s);
  return out;
}

std::string env_or(const char* name, const char* fallback) {
  const char* value = std::getenv(name);
  return value && *value ? value : fallback;
}

std::vector<std::uint64_t> parse_size_list(const std::string& text) {
  std::vector<std::uint64_t> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) fail("empty entry in --sizes");
    try {
      sizes.push_back(std::stoull(item));
    } catch (const std::exception&) {
      fail("malformed size '" + item + "'");
    }
  }
  if (sizes.empty()) fail("--sizes is empty");
  return sizes;
}

std::vector<std::uint64_t> read_size_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open size file '" + path + "'");
  std::vector<std::uint64_t> sizes;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      sizes.push_back(std::stoull(line));
    } catch (const std::exception&) {
      fail("malformed size line '" + line + "' in " + path);
    }
  }
  if (sizes.empty()) fail("size file '" + path + "' is empty");
  return sizes;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& data, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write '" + path + "'");
  out << data;
}

// Shared instance options for tree/simulate.
struct InstanceOpts {
  std::uint32_t p = 0;
  std::string sizes_inline;
  std::string sizes_file;
  std::string dist;
  std::uint64_t b = 1;
  std::uint64_t rho = 5;
  std::uint64_t seed = 0;
  std::string root = "auto";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--p", p, "processor count");
    cmd->add_option("--sizes", sizes_inline, "comma-separated block sizes, rank order");
    cmd->add_option("--sizes-file", sizes_file, "file with one block size per line");
    cmd->add_option("--dist", dist,
                    "distribution: same|random|spikes|decreasing|alternating|two_blocks");
    cmd->add_option("--b", b, "average block size for --dist");
    cmd->add_option("--rho", rho, "spike factor for --dist spikes");
    cmd->add_option("--seed", seed, "seed for --dist random draws");
    cmd->add_option("--root", root, "gather root: 'auto' or a rank");
  }

  std::int64_t root_value() const {
    if (root == "auto") return -1;
    try {
      return std::stoll(root);
    } catch (const std::exception&) {
      fail("--root must be 'auto' or a rank");
    }
  }

  ogt_instance* make_instance() const {
    const int given = (!sizes_inline.empty() ? 1 : 0) + (!sizes_file.empty() ? 1 : 0) +
                      (!dist.empty() ? 1 : 0);
    if (given != 1) fail("give exactly one of --sizes, --sizes-file, --dist");
    ogt_instance* inst = nullptr;
    if (!dist.empty()) {
      if (p == 0) fail("--p is required with --dist");
      check(ogt_instance_generate(dist.c_str(), p, b, rho, seed, root_value(), &inst));
      return inst;
    }
    std::vector<std::uint64_t> sizes =
        !sizes_inline.empty() ? parse_size_list(sizes_inline) : read_size_file(sizes_file);
    if (p != 0 && p != sizes.size())
      fail("--p (" + std::to_string(p) + ") does not match the number of sizes (" +
           std::to_string(sizes.size()) + ")");
    check(ogt_instance_create(static_cast<std::uint32_t>(sizes.size()), sizes.data(),
                              root_value(), &inst));
    return inst;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"ordered gather/scatter trees under the alpha-beta cost model"};
  app.require_subcommand(1);

  std::string alpha = env_or("OGT_ALPHA", "4");
  std::string beta = env_or("OGT_BETA", "1");

  // tree
  auto* tree_cmd = app.add_subcommand("tree", "construct a gather tree");
  InstanceOpts tree_inst;
  tree_inst.add_to(tree_cmd);
  std::string tree_algorithm = "tuw";
  bool tree_distributed = false;
  std::string tree_format = "json";
  std::string tree_load;
  std::string tree_emit_trace;
  std::string tree_output;
  tree_cmd->add_option("--algorithm", tree_algorithm, "tuw|binomial");
  tree_cmd->add_flag("--distributed", tree_distributed,
                     "use the distributed construction protocol");
  tree_cmd->add_option("--format", tree_format, "json|dot");
  tree_cmd->add_option("--load", tree_load, "reserialize a tree JSON file instead of building");
  tree_cmd->add_option("--emit-trace", tree_emit_trace,
                       "write the construction trace (JSON lines) to a file");
  tree_cmd->add_option("-o,--output", tree_output, "output path (default stdout)");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "simulate a schedule");
  InstanceOpts sim_inst;
  sim_inst.add_to(sim_cmd);
  std::string sim_algorithm = "tuw";
  std::string sim_tree_file;
  std::string sim_format = "json";
  bool sim_construction = false;
  bool sim_scatter = false;
  std::string sim_output;
  sim_cmd->add_option("--algorithm", sim_algorithm, "tuw|binomial");
  sim_cmd->add_option("--tree", sim_tree_file, "simulate a tree loaded from JSON");
  sim_cmd->add_flag("--include-construction", sim_construction,
                    "run the tree-construction phase before the data phase");
  sim_cmd->add_flag("--scatter", sim_scatter, "simulate the scatter direction");
  sim_cmd->add_option("--format", sim_format, "json (summary) | csv (event trace)");
  sim_cmd->add_option("-o,--output", sim_output, "output path (default stdout)");
  sim_cmd->add_option("--alpha", alpha, "latency, exact rational");
  sim_cmd->add_option("--beta", beta, "time per data unit, exact rational");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "run the benchmark grid");
  std::string bench_p = "16,64,560";
  std::string bench_b = "1,10,100,1000,10000";
  std::string bench_kinds = "same,random,spikes,decreasing,alternating,two_blocks";
  std::string bench_algorithms;
  std::uint64_t bench_seed = 1;
  std::uint64_t bench_rho = 5;
  std::int64_t bench_root = -1;
  unsigned bench_jobs = 1;
  std::string bench_format = "csv";
  std::string bench_output;
  bench_cmd->add_option("--p-list", bench_p, "comma-separated processor counts");
  bench_cmd->add_option("--b-list", bench_b, "comma-separated average block sizes");
  bench_cmd->add_option("--kinds", bench_kinds, "comma-separated distribution names");
  bench_cmd->add_option("--algorithms", bench_algorithms,
                        "restrict rows to these algorithms: "
                        "tuw,tuw-auto,binomial,flat,flat-skip0,padded (default all)");
  bench_cmd->add_option("--seed", bench_seed, "seed recorded in every row");
  bench_cmd->add_option("--rho", bench_rho, "spike factor");
  bench_cmd->add_option("--root", bench_root, "fixed root for every cell (default floor(p/2))");
  bench_cmd->add_option("--jobs", bench_jobs, "worker threads; output order is unaffected");
  bench_cmd->add_option("--format", bench_format, "csv|md");
  bench_cmd->add_option("-o,--output", bench_output, "output path (default stdout)");
  bench_cmd->add_option("--alpha", alpha, "latency, exact rational");
  bench_cmd->add_option("--beta", beta, "time per data unit, exact rational");

  // check
  auto* check_cmd = app.add_subcommand("check", "evaluate the performance guidelines");
  std::string check_dist;
  std::uint32_t check_p = 0;
  std::uint64_t check_b = 1;
  std::uint64_t check_rho = 5;
  std::uint64_t check_seed = 0;
  std::int64_t check_root = -1;
  std::string check_guideline = "auto";
  std::string check_output;
  check_cmd->add_option("--dist", check_dist, "distribution name")->required();
  check_cmd->add_option("--p", check_p, "processor count")->required();
  check_cmd->add_option("--b", check_b, "average block size");
  check_cmd->add_option("--rho", check_rho, "spike factor");
  check_cmd->add_option("--seed", check_seed, "seed");
  check_cmd->add_option("--root", check_root, "fixed root (default floor(p/2))");
  check_cmd->add_option("--guideline", check_guideline,
                        "1, 2, both, or auto (2 plus 1 on uniform cells)");
  check_cmd->add_option("-o,--output", check_output, "output path (default stdout)");
  check_cmd->add_option("--alpha", alpha, "latency, exact rational");
  check_cmd->add_option("--beta", beta, "time per data unit, exact rational");

  tree_cmd->add_option("--alpha", alpha, "latency, exact rational");
  tree_cmd->add_option("--beta", beta, "time per data unit, exact rational");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e);
      return kExitOk;
    }
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  if (tree_cmd->parsed()) {
    ogt_tree* tree = nullptr;
    ogt_trace* trace = nullptr;
    if (!tree_load.empty()) {
      std::string text = read_file(tree_load);
      check(ogt_tree_from_json(text.c_str(), &tree));
    } else {
      ogt_instance* inst = tree_inst.make_instance();
      if (tree_algorithm == "binomial") {
        std::int64_t root = tree_inst.root_value();
        if (root < 0) fail("--algorithm binomial needs an explicit --root");
        check(ogt_tree_binomial(inst, static_cast<std::uint32_t>(root), &tree));
      } else if (tree_algorithm == "tuw") {
        if (tree_distributed || !tree_emit_trace.empty())
          check(ogt_tree_build_distributed(inst, &tree, &trace));
        else
          check(ogt_tree_build(inst, &tree));
      } else {
        fail("unknown --algorithm '" + tree_algorithm + "'");
      }
      ogt_instance_destroy(inst);
    }
    char* text = nullptr;
    if (tree_format == "json")
      check(ogt_tree_to_json(tree, &text));
    else if (tree_format == "dot")
      check(ogt_tree_to_dot(tree, &text));
    else
      fail("tree --format must be json or dot");
    write_output(take_string(text), tree_output);
    if (!tree_emit_trace.empty()) {
      if (!trace) fail("--emit-trace requires building a tuw tree");
      char* jsonl = nullptr;
      check(ogt_trace_to_jsonl(trace, &jsonl));
      write_output(take_string(jsonl), tree_emit_trace);
    }
    ogt_trace_destroy(trace);
    ogt_tree_destroy(tree);
    return kExitOk;
  }

  if (sim_cmd->parsed()) {
    ogt_model* model = nullptr;
    check(ogt_model_create(alpha.c_str(), beta.c_str(), &model));
    ogt_instance* inst = sim_inst.make_instance();
    ogt_tree* tree = nullptr;
    if (!sim_tree_file.empty()) {
      std::string text = read_file(sim_tree_file);
      check(ogt_tree_from_json(text.c_str(), &tree));
    } else if (sim_algorithm == "binomial") {
      std::int64_t root = sim_inst.root_value();
      if (root < 0) fail("--algorithm binomial needs an explicit --root");
      check(ogt_tree_binomial(inst, static_cast<std::uint32_t>(root), &tree));
    } else if (sim_algorithm == "tuw") {
      check(ogt_tree_build(inst, &tree));
    } else {
      fail("unknown --algorithm '" + sim_algorithm + "'");
    }
    ogt_report* report = nullptr;
    check(ogt_simulate(tree, inst, model, sim_construction ? 1 : 0, sim_scatter ? 1 : 0,
                       &report));
    char* text = nullptr;
    if (sim_format == "json")
      check(ogt_report_summary_json(report, tree, inst, model, &text));
    else if (sim_format == "csv")
      check(ogt_report_events_csv(report, &text));
    else
      fail("simulate --format must be json or csv");
    write_output(take_string(text), sim_output);
    ogt_report_destroy(report);
    ogt_tree_destroy(tree);
    ogt_instance_destroy(inst);
    ogt_model_destroy(model);
    return kExitOk;
  }

  if (bench_cmd->parsed()) {
    auto parse_u32_list = [](const std::string& text, const char* what) {
      std::vector<std::uint32_t> out;
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
        } catch (const std::exception&) {
          fail(std::string("malformed ") + what + " entry '" + item + "'");
        }
      }
      if (out.empty()) fail(std::string(what) + " is empty");
      return out;
    };
    auto parse_u64_list = [](const std::string& text, const char* what) {
      std::vector<std::uint64_t> out;
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          out.push_back(std::stoull(item));
        } catch (const std::exception&) {
          fail(std::string("malformed ") + what + " entry '" + item + "'");
        }
      }
      if (out.empty()) fail(std::string(what) + " is empty");
      return out;
    };
    std::vector<std::uint32_t> ps = parse_u32_list(bench_p, "--p-list");
    std::vector<std::uint64_t> bs = parse_u64_list(bench_b, "--b-list");
    char* text = nullptr;
    check(ogt_bench(bench_kinds.c_str(), bench_algorithms.c_str(), ps.data(),
                    static_cast<std::uint32_t>(ps.size()), bs.data(),
                    static_cast<std::uint32_t>(bs.size()), alpha.c_str(), beta.c_str(),
                    bench_rho, bench_seed, bench_root, bench_jobs, bench_format.c_str(),
                    &text));
    write_output(take_string(text), bench_output);
    return kExitOk;
  }

  if (check_cmd->parsed()) {
    unsigned mask = 0;
    if (check_guideline == "auto") {
      // guideline 1 only applies to uniform cells; probe the generated sizes
      ogt_instance* probe = nullptr;
      check(ogt_instance_generate(check_dist.c_str(), check_p, check_b, check_rho, check_seed,
                                  -1, &probe));
      std::vector<std::uint64_t> sizes(ogt_instance_p(probe));
      check(ogt_instance_sizes(probe, sizes.data(), static_cast<std::uint32_t>(sizes.size())));
      ogt_instance_destroy(probe);
      bool uniform = true;
      for (std::uint64_t m : sizes) uniform = uniform && m == sizes.front();
      mask = uniform ? 3u : 2u;
    } else if (check_guideline == "1") {
      mask = 1u;
    } else if (check_guideline == "2") {
      mask = 2u;
    } else if (check_guideline == "both") {
      mask = 3u;
    } else {
      fail("--guideline must be 1, 2, both or auto");
    }
    char* text = nullptr;
    std::uint32_t violations = 0;
    check(ogt_check_guidelines(check_dist.c_str(), check_p, check_b, check_rho, check_seed,
                               check_root, alpha.c_str(), beta.c_str(), mask, &text,
                               &violations));
    write_output(take_string(text), check_output);
    if (violations > 0) {
      std::cerr << violations << " guideline violation(s)\n";
      return kExitViolations;
    }
    return kExitOk;
  }

  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
