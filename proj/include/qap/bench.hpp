#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qap/run.hpp"

namespace qap {

/// (instances x solvers x seeds) experiment. Budgets left unset fall back to
/// default_stop() per solver.
struct BenchPlan {
  std::vector<std::string> instances;
  std::vector<SolverId> solvers;
  std::vector<std::uint64_t> seeds;
  GaConfig ga;
  TsConfig ts;
  SaConfig sa;
  std::optional<std::uint64_t> max_iterations;
  std::optional<std::chrono::milliseconds> time_limit;
  std::size_t parallelism = 1;
  std::filesystem::path data_dir;

  /// Throws ConfigError on empty lists, zero parallelism or invalid solver configs.
  void validate() const;

  SolverConfig config_for(SolverId id) const;
  StopCondition stop_for(SolverId id) const;
};

inline constexpr std::uint64_t kDefaultSeeds[] = {1, 2, 3, 4, 5};
inline constexpr std::chrono::milliseconds kTable1CellTimeLimit{60'000};

/// The twelve reference instances x {GA, TS, SA} x seeds, default configs,
/// each cell capped at kTable1CellTimeLimit.
BenchPlan table1_plan(std::vector<std::uint64_t> seeds = {std::begin(kDefaultSeeds),
                                                           std::end(kDefaultSeeds)});

/// Reads a plan document:
/// {"instances": [...], "solvers": ["ga", ...], "seeds": [...],
///  "max_iterations": N, "time_limit_ms": N, "parallelism": N, "data_dir": "...",
///  "ga": {...}, "ts": {...}, "sa": {...}}
/// Only "instances" is required. Throws ConfigError on unknown keys or bad values.
BenchPlan parse_plan_json(std::string_view text);

struct BenchRow {
  std::string instance;
  SolverId solver = SolverId::kGa;
  std::uint64_t seed = 0;
  std::optional<Cost> best_quality;
  std::optional<Cost> best_known;
  std::optional<double> diff_percent;
  std::int64_t elapsed_ms = 0;
  std::string formatted_time;
  std::string error;  // empty on success

  bool ok() const noexcept { return error.empty(); }

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

/// One (instance, solver) cell: best quality over seeds, median time.
struct SummaryCell {
  std::string instance;
  SolverId solver = SolverId::kGa;
  std::optional<Cost> best_quality;
  std::optional<Cost> best_known;
  std::optional<double> diff_percent;
  std::int64_t median_elapsed_ms = 0;
  std::string formatted_time;
  std::size_t runs = 0;
  std::size_t failures = 0;

  friend bool operator==(const SummaryCell&, const SummaryCell&) = default;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<SummaryCell> summary;

  bool ok() const noexcept;
};

/// (best_quality - best_known) / best_known * 100. Throws UsageError when best_known <= 0.
double relative_difference(Cost best_quality, Cost best_known);

/// "MM:SS.t" with tenths truncated, e.g. 10400 -> "00:10.4". Negative input clamps to 0.
std::string format_duration(std::int64_t ms);

/// Median of the values; for an even count the mean of the two middle values, rounded down.
std::int64_t median(std::vector<std::int64_t> values);

/// Groups rows per (instance, solver) in first-appearance order.
std::vector<SummaryCell> summarize(const std::vector<BenchRow>& rows);

/// Runs every cell on a pool of plan.parallelism threads. Rows come back in
/// plan order (instance, then solver, then seed) whatever the interleaving;
/// failing cells carry an error and leave the others untouched.
/// Throws ConfigError when the plan itself is invalid.
BenchReport run_bench(const BenchPlan& plan);

}  // namespace qap
