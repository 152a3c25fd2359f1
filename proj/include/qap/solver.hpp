#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qap/core.hpp"

namespace qap {

enum class SolverId { kGa, kTs, kSa };

inline constexpr SolverId kAllSolvers[] = {SolverId::kGa, SolverId::kTs, SolverId::kSa};

/// "GA", "TS" or "SA".
std::string_view to_string(SolverId id);

/// Case-insensitive inverse of to_string. Throws ConfigError on anything else.
SolverId parse_solver_id(std::string_view text);

/// When a run ends. Iterations are solver-specific units: GA generations,
/// TS moves, SA proposals. At least one of max_iterations / time_limit must be set.
struct StopCondition {
  std::optional<std::uint64_t> max_iterations;
  std::optional<std::chrono::milliseconds> time_limit;
  std::optional<Cost> target_quality;  // stop as soon as best <= target

  void validate() const;
};

/// Default budget: 1000 GA generations, 20000 TS iterations, and for SA a
/// 50M-proposal safety cap (SA normally ends on its temperature floor).
StopCondition default_stop(SolverId id);

struct TracePoint {
  std::uint64_t iteration = 0;
  Cost best_cost = 0;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

/// Outcome of one seeded run.
///
/// The constructor re-evaluates `best` against the instance and checks that the
/// trace is non-increasing; a violation is a solver bug and throws std::logic_error.
class RunResult {
 public:
  RunResult(const QapInstance& inst, Assignment best, Cost best_cost,
            std::uint64_t iterations_executed, std::chrono::milliseconds elapsed,
            std::vector<TracePoint> trace, std::uint64_t seed);

  const Assignment& best() const noexcept { return best_; }
  Cost best_cost() const noexcept { return best_cost_; }
  std::uint64_t iterations_executed() const noexcept { return iterations_; }
  std::chrono::milliseconds elapsed() const noexcept { return elapsed_; }
  /// Initial point, every improvement of the best-so-far cost, and the final point.
  const std::vector<TracePoint>& trace() const noexcept { return trace_; }
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  Assignment best_;
  Cost best_cost_;
  std::uint64_t iterations_;
  std::chrono::milliseconds elapsed_;
  std::vector<TracePoint> trace_;
  std::uint64_t seed_;
};

namespace detail {

/// Clock, budget and trace bookkeeping shared by the solvers.
class SearchProgress {
 public:
  /// Starts the clock. The wall clock is read on every `clock_stride`-th should_stop call.
  explicit SearchProgress(const StopCondition& stop, std::uint64_t clock_stride = 1);

  /// Sets the best cost of the starting solution(s) as trace point 0.
  void begin(Cost initial_best);

  /// True when the run must end after `iterations_done` iterations.
  bool should_stop(std::uint64_t iterations_done);

  /// Records `cost` at `iteration` if it improves on the best so far.
  bool offer(std::uint64_t iteration, Cost cost);

  Cost best() const noexcept { return best_; }
  std::chrono::milliseconds elapsed() const;

  /// Appends the final point and hands over the trace.
  std::vector<TracePoint> finish(std::uint64_t iterations_done);

 private:
  using Clock = std::chrono::steady_clock;

  StopCondition stop_;
  std::uint64_t clock_stride_;
  std::uint64_t calls_ = 0;
  Clock::time_point start_;
  Cost best_ = 0;
  std::vector<TracePoint> trace_;
};

}  // namespace detail

}  // namespace qap
