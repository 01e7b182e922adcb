#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ogt/model.hpp"

namespace ogt {

enum class DistKind { Same, Random, Spikes, Decreasing, Alternating, TwoBlocks };

const char* dist_kind_name(DistKind kind);
std::optional<DistKind> dist_kind_from_name(std::string_view name);

struct DistributionSpec {
  DistKind kind = DistKind::Same;
  std::uint64_t b = 1;     // average block size, >= 1
  std::uint64_t rho = 5;   // spikes only, >= 2
  std::uint64_t seed = 0;  // 64-bit stream seed
};

// Deterministic in (spec, p); random draws come from a splitmix64 stream
// seeded with (seed, kind, p).
std::vector<std::uint64_t> generate(const DistributionSpec& spec, std::uint32_t p);

// Fixed algorithm column order for grids and guideline checks.
inline constexpr const char* kAlgorithms[] = {"tuw",  "tuw-auto",   "binomial",
                                              "flat", "flat-skip0", "padded"};

struct GridRow {
  DistKind kind = DistKind::Same;
  std::uint32_t p = 0;
  std::uint64_t b = 0;
  std::uint64_t seed = 0;
  std::uint64_t m = 0;
  std::uint64_t m_prime = 0;
  std::string algorithm;
  Rat alpha;
  Rat beta;
  Rat construction_time;
  Rat makespan;  // total, construction included where the algorithm has one
  Rat linear_bound;
  Rat theorem_bound;
  Rat penalty_observed;
  bool g1_applicable = false;
  bool g1_violation = false;
  bool g2_violation = false;
};

struct GridConfig {
  std::vector<std::uint32_t> p_list;
  std::vector<std::uint64_t> b_list;
  std::vector<DistKind> kinds;
  CostModel model;
  std::uint64_t seed = 0;
  std::uint64_t rho = 5;
  std::optional<Rank> root;  // default floor(p/2)
  unsigned jobs = 1;
  // Restrict emitted rows to these algorithm names; empty means all. The
  // guideline columns are still computed against the full set.
  std::vector<std::string> algorithms;
  // Guard against runaway grids: sum of p over all cells.
  std::uint64_t cell_budget = 50'000'000;
};

// One row per (cell, algorithm), ordered by (kind, p, b, algorithm).
std::vector<GridRow> run_grid(const GridConfig& config);

std::string grid_to_csv(const std::vector<GridRow>& rows);
std::string grid_to_markdown(const std::vector<GridRow>& rows);

struct GuidelineReport {
  int guideline = 2;  // 1 or 2
  std::string algorithm;
  Rat lhs_time;
  Rat rhs_time;
  bool satisfied = true;
  Rat ratio;  // lhs/rhs, 1 when both sides are zero
  // configuration echo
  DistKind kind = DistKind::Same;
  std::uint32_t p = 0;
  std::uint64_t b = 0;
  std::uint64_t seed = 0;
  Rat alpha;
  Rat beta;
  std::uint64_t m = 0;
  std::uint64_t m_prime = 0;
};

inline constexpr int kGuideline1 = 1;
inline constexpr int kGuideline2 = 2;

// Guideline 1 (regular vs irregular) requires uniform sizes and is rejected
// otherwise; guideline 2 (padding) applies to any cell.
std::vector<GuidelineReport> check_guidelines(const DistributionSpec& spec, std::uint32_t p,
                                              std::optional<Rank> root, const CostModel& model,
                                              bool guideline1, bool guideline2);

std::string guideline_reports_to_json(const std::vector<GuidelineReport>& reports);

}  // namespace ogt
