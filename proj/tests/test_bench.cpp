#include <doctest.h>

#include <set>

#include "ogt/bench.hpp"
#include "support.hpp"

using namespace ogt;

namespace {
const CostModel kUnit = CostModel::from_strings("1", "1");

const GridRow* find_row(const std::vector<GridRow>& rows, const char* algorithm) {
  for (const GridRow& row : rows)
    if (row.algorithm == algorithm) return &row;
  return nullptr;
}
}  // namespace

TEST_CASE("generator closed forms") {
  CHECK(generate({DistKind::Decreasing, 10, 5, 0}, 4) ==
        std::vector<std::uint64_t>{21, 16, 11, 6});
  CHECK(generate({DistKind::Alternating, 10, 5, 0}, 4) ==
        std::vector<std::uint64_t>{15, 5, 15, 5});
  CHECK(generate({DistKind::TwoBlocks, 7, 5, 0}, 5) ==
        std::vector<std::uint64_t>{7, 0, 0, 0, 7});
  CHECK(generate({DistKind::Same, 9, 5, 0}, 3) == std::vector<std::uint64_t>{9, 9, 9});
  CHECK(generate({DistKind::TwoBlocks, 7, 5, 0}, 1) == std::vector<std::uint64_t>{7});
}

TEST_CASE("generator is pure in (spec, p)") {
  DistributionSpec spec{DistKind::Random, 50, 5, 424242};
  CHECK(generate(spec, 64) == generate(spec, 64));
  // a different p yields a fresh stream, not a prefix
  auto a = generate(spec, 64);
  auto b = generate(spec, 32);
  CHECK(!std::equal(b.begin(), b.end(), a.begin()));
}

TEST_CASE("random draws stay in [1, 2b]") {
  DistributionSpec spec{DistKind::Random, 10, 5, 7};
  auto sizes = generate(spec, 10000);
  for (std::uint64_t m : sizes) {
    CHECK(m >= 1);
    CHECK(m <= 20);
  }
}

TEST_CASE("spikes draw rho*b with probability 1/rho") {
  DistributionSpec spec{DistKind::Spikes, 10, 5, 99};
  auto sizes = generate(spec, 10000);
  std::uint64_t spikes = 0;
  for (std::uint64_t m : sizes) {
    bool is_spike = m == 50;
    CHECK((is_spike || m == 1));
    spikes += is_spike ? 1 : 0;
  }
  double fraction = static_cast<double>(spikes) / 10000.0;
  CHECK(fraction > 0.15);  // within 5 percentage points of 1/5
  CHECK(fraction < 0.25);
}

TEST_CASE("generator rejects invalid parameters") {
  CHECK_THROWS_AS(generate({DistKind::Same, 0, 5, 0}, 4), Error);
  CHECK_THROWS_AS(generate({DistKind::Spikes, 10, 1, 0}, 4), Error);
  CHECK_THROWS_AS(generate({DistKind::Same, 1, 5, 0}, 0), Error);
}

TEST_CASE("single cell closed forms: same, p=4, b=1, unit model") {
  GridConfig config;
  config.p_list = {4};
  config.b_list = {1};
  config.kinds = {DistKind::Same};
  config.model = kUnit;
  config.seed = 1;
  std::vector<GridRow> rows = run_grid(config);
  REQUIRE(rows.size() == 6);

  const GridRow* binomial = find_row(rows, "binomial");
  REQUIRE(binomial);
  CHECK(binomial->makespan == Rat(5));  // 2a + 3b

  const GridRow* tuw = find_row(rows, "tuw");
  REQUIRE(tuw);
  CHECK(tuw->construction_time == Rat(3));  // 2*ceil(log2 4) - 1 chained steps
  CHECK(tuw->makespan == Rat(8));           // 3a construction + 2a + 3b data
  CHECK(tuw->m == 4);
  CHECK(tuw->m_prime == 4);
  CHECK_FALSE(tuw->g2_violation);

  const GridRow* padded = find_row(rows, "padded");
  REQUIRE(padded);
  CHECK(padded->makespan == Rat(9));  // allreduce 4 + binomial 5
}

TEST_CASE("two_blocks cell: flat with skipped zeros wins") {
  GridConfig config;
  config.p_list = {5};
  config.b_list = {7};
  config.kinds = {DistKind::TwoBlocks};
  config.model = kUnit;
  config.seed = 1;
  config.root = 2;
  std::vector<GridRow> rows = run_grid(config);
  const GridRow* skip = find_row(rows, "flat-skip0");
  REQUIRE(skip);
  CHECK(skip->makespan == Rat(16));
  for (const GridRow& row : rows) {
    if (row.algorithm == "flat-skip0" || row.algorithm == "tuw-auto") continue;
    CHECK(skip->makespan < row.makespan);
  }
}

TEST_CASE("grid validation errors") {
  GridConfig config;
  config.p_list = {4};
  config.kinds = {DistKind::Same};
  config.model = kUnit;
  CHECK_THROWS_AS(run_grid(config), Error);  // empty b list

  config.b_list = {1};
  config.cell_budget = 2;
  CHECK_THROWS_AS(run_grid(config), Error);  // budget exceeded
}

TEST_CASE("csv output: exact header, deterministic bytes, canonical row order") {
  GridConfig config;
  config.p_list = {4, 8};
  config.b_list = {1, 10};
  config.kinds = {DistKind::Random, DistKind::Same};
  config.model = kUnit;
  config.seed = 77;
  std::string csv = grid_to_csv(run_grid(config));
  CHECK(csv.rfind("problem,p,b,seed,m,m_prime,algorithm,alpha,beta,construction_time,makespan,"
                  "linear_bound,theorem_bound,penalty_observed,g1_violation,g2_violation\n",
                  0) == 0);
  CHECK(csv == grid_to_csv(run_grid(config)));
  // kinds are ordered canonically even though the config listed random first
  CHECK(csv.find("same,4,1") < csv.find("random,4,1"));

  GridConfig parallel = config;
  parallel.jobs = 4;
  CHECK(grid_to_csv(run_grid(parallel)) == csv);
}

TEST_CASE("markdown output carries the per-algorithm columns") {
  GridConfig config;
  config.p_list = {4};
  config.b_list = {1};
  config.kinds = {DistKind::Same};
  config.model = kUnit;
  config.seed = 1;
  std::string md = grid_to_markdown(run_grid(config));
  CHECK(md.find("## p = 4") != std::string::npos);
  CHECK(md.find("| problem | b | m | m' | tuw | tuw-auto | binomial | flat | flat-skip0 | "
                "padded |") != std::string::npos);
  CHECK(md.find("| same | 1 | 4 | 4 |") != std::string::npos);
}

TEST_CASE("guideline checks on the small uniform cell") {
  DistributionSpec spec{DistKind::Same, 1, 5, 1};
  auto reports = check_guidelines(spec, 4, std::nullopt, kUnit, true, true);
  REQUIRE(reports.size() == 12);  // both guidelines for six algorithms
  for (const GuidelineReport& rep : reports) {
    CHECK(rep.satisfied);
    if (rep.guideline == kGuideline2 && rep.algorithm == "tuw") {
      CHECK(rep.lhs_time == Rat(8));
      CHECK(rep.rhs_time == Rat(9));
      CHECK(rep.ratio == Rat(8, 9));
    }
    if (rep.guideline == kGuideline1) CHECK(rep.lhs_time == Rat(5));
  }
}

TEST_CASE("guideline 1 refuses non-uniform cells") {
  DistributionSpec spec{DistKind::Random, 10, 5, 1};
  CHECK_THROWS_AS(check_guidelines(spec, 4, std::nullopt, kUnit, true, true), Error);
  CHECK_NOTHROW(check_guidelines(spec, 4, std::nullopt, kUnit, false, true));
}

TEST_CASE("guidelines are trivially satisfied on one processor") {
  DistributionSpec spec{DistKind::Same, 3, 5, 1};
  auto reports = check_guidelines(spec, 1, std::nullopt, kUnit, true, true);
  for (const GuidelineReport& rep : reports) {
    CHECK(rep.satisfied);
    CHECK(rep.lhs_time == Rat(0));
    CHECK(rep.rhs_time == Rat(0));
    CHECK(rep.ratio == Rat(1));
  }
}

TEST_CASE("guideline 2 on a seeded random cell recomputes the generated vector") {
  DistributionSpec spec{DistKind::Random, 10, 5, 2024};
  auto reports = check_guidelines(spec, 4, std::nullopt, kUnit, false, true);
  auto sizes = generate(spec, 4);
  std::uint64_t m = 0, b_max = 0;
  for (auto v : sizes) {
    m += v;
    b_max = std::max(b_max, v);
  }
  for (const GuidelineReport& rep : reports) {
    CHECK(rep.m == m);
    CHECK(rep.m_prime == 4 * b_max);
    if (rep.algorithm == "padded") CHECK(rep.lhs_time == rep.rhs_time);
  }
}
