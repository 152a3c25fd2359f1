#include "qap/solver.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "qap/error.hpp"
#include "qap/qaplib_io.hpp"
#include "qap/run.hpp"

namespace qap {

std::string_view to_string(SolverId id) {
  switch (id) {
    case SolverId::kGa:
      return "GA";
    case SolverId::kTs:
      return "TS";
    case SolverId::kSa:
      return "SA";
  }
  return "?";
}

SolverId parse_solver_id(std::string_view text) {
  const std::string key = to_lower(text);
  if (key == "ga") {
    return SolverId::kGa;
  }
  if (key == "ts") {
    return SolverId::kTs;
  }
  if (key == "sa") {
    return SolverId::kSa;
  }
  throw ConfigError(fmt::format("unknown solver '{}' (expected ga, ts or sa)", text));
}

void StopCondition::validate() const {
  if (!max_iterations && !time_limit) {
    throw ConfigError("stop condition needs max_iterations or time_limit");
  }
  if (time_limit && time_limit->count() < 0) {
    throw ConfigError("time_limit must be non-negative");
  }
}

StopCondition default_stop(SolverId id) {
  switch (id) {
    case SolverId::kGa:
      return {1000, std::nullopt, std::nullopt};
    case SolverId::kTs:
      return {20000, std::nullopt, std::nullopt};
    case SolverId::kSa:
      return {50'000'000, std::nullopt, std::nullopt};
  }
  throw ConfigError("unknown solver id");
}

RunResult::RunResult(const QapInstance& inst, Assignment best, Cost best_cost,
                     std::uint64_t iterations_executed, std::chrono::milliseconds elapsed,
                     std::vector<TracePoint> trace, std::uint64_t seed)
    : best_(std::move(best)),
      best_cost_(best_cost),
      iterations_(iterations_executed),
      elapsed_(elapsed),
      trace_(std::move(trace)),
      seed_(seed) {
  if (evaluate(inst, best_) != best_cost_) {
    throw std::logic_error(fmt::format("reported best cost {} differs from re-evaluation {}",
                                       best_cost_, evaluate(inst, best_)));
  }
  for (std::size_t k = 1; k < trace_.size(); ++k) {
    if (trace_[k].best_cost > trace_[k - 1].best_cost ||
        trace_[k].iteration < trace_[k - 1].iteration) {
      throw std::logic_error("best-so-far trace is not monotone");
    }
  }
  if (!trace_.empty() && trace_.back().best_cost != best_cost_) {
    throw std::logic_error("trace does not end at the best cost");
  }
}

SolverId solver_of(const SolverConfig& cfg) {
  return static_cast<SolverId>(cfg.index());
}

SolverConfig default_config(SolverId id) {
  switch (id) {
    case SolverId::kGa:
      return GaConfig{};
    case SolverId::kTs:
      return TsConfig{};
    case SolverId::kSa:
      return SaConfig{};
  }
  throw ConfigError("unknown solver id");
}

RunResult run(SolverId solver, const QapInstance& inst, const SolverConfig& params,
              const StopCondition& stop, std::uint64_t seed) {
  if (solver_of(params) != solver) {
    throw ConfigError(fmt::format("{} solver given a {} configuration", to_string(solver),
                                  to_string(solver_of(params))));
  }
  switch (solver) {
    case SolverId::kGa:
      return ga_run(inst, std::get<GaConfig>(params), stop, seed).result;
    case SolverId::kTs:
      return ts_run(inst, std::get<TsConfig>(params), stop, seed);
    case SolverId::kSa:
      return sa_run(inst, std::get<SaConfig>(params), stop, seed).result;
  }
  throw ConfigError("unknown solver id");
}

namespace detail {

SearchProgress::SearchProgress(const StopCondition& stop, std::uint64_t clock_stride)
    : stop_(stop), clock_stride_(clock_stride == 0 ? 1 : clock_stride), start_(Clock::now()) {}

void SearchProgress::begin(Cost initial_best) {
  best_ = initial_best;
  trace_.assign(1, TracePoint{0, initial_best});
}

bool SearchProgress::should_stop(std::uint64_t iterations_done) {
  if (stop_.max_iterations && iterations_done >= *stop_.max_iterations) {
    return true;
  }
  if (stop_.target_quality && best_ <= *stop_.target_quality) {
    return true;
  }
  if (stop_.time_limit && (calls_++ % clock_stride_) == 0) {
    return Clock::now() - start_ >= *stop_.time_limit;
  }
  return false;
}

bool SearchProgress::offer(std::uint64_t iteration, Cost cost) {
  if (cost >= best_) {
    return false;
  }
  best_ = cost;
  trace_.push_back({iteration, cost});
  return true;
}

std::chrono::milliseconds SearchProgress::elapsed() const {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_);
}

std::vector<TracePoint> SearchProgress::finish(std::uint64_t iterations_done) {
  if (trace_.back().iteration != iterations_done) {
    trace_.push_back({iterations_done, best_});
  }
  return std::move(trace_);
}

}  // namespace detail

}  // namespace qap
