#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qap/core.hpp"
#include "qap/solver.hpp"

namespace qap {

struct TsConfig {
  std::optional<std::size_t> tenure;  // unset: the instance size n
  double candidate_fraction = 1.0;    // share of the swap neighbourhood scanned per iteration

  std::size_t tenure_for(std::size_t n) const { return tenure.value_or(n); }

  /// Throws ConfigError.
  void validate() const;
};

/// Short-term memory over (facility, location) attributes. An attribute is
/// tabu at iteration t iff its expiry is greater than t.
class TabuList {
 public:
  explicit TabuList(std::size_t n) : n_(n), expiry_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }

  std::uint64_t expiry(std::size_t facility, std::size_t location) const {
    return expiry_[facility * n_ + location];
  }
  bool is_tabu(std::size_t facility, std::size_t location, std::uint64_t iteration) const {
    return expiry(facility, location) > iteration;
  }
  void forbid(std::size_t facility, std::size_t location, std::uint64_t until) {
    expiry_[facility * n_ + location] = until;
  }

  /// A swap is tabu when it would send either facility back to a forbidden location.
  bool move_is_tabu(const Assignment& current, SwapMove m, std::uint64_t iteration) const {
    return is_tabu(m.i, current[m.j], iteration) || is_tabu(m.j, current[m.i], iteration);
  }

  /// First iteration at which the swap is no longer tabu.
  std::uint64_t move_release(const Assignment& current, SwapMove m) const;

 private:
  std::size_t n_;
  std::vector<std::uint64_t> expiry_;
};

/// Not tabu, or tabu but strictly better than the best cost found so far (aspiration).
bool is_admissible(const TabuList& tabu, const Assignment& current, SwapMove move,
                   std::uint64_t iteration, Cost move_cost, Cost best_cost);

/// What the search saw and chose at one iteration. References are valid only
/// for the duration of the observer call and show the state before the move.
struct TsStep {
  std::uint64_t iteration;
  const Assignment& current;
  const TabuList& tabu;
  Cost current_cost;
  Cost best_cost;
  SwapMove move;
  Cost move_cost;
  bool aspirated;  // chosen move is tabu and admitted by aspiration
  bool fallback;   // no admissible move; least-recently-forbidden tabu move taken
};

using TsObserver = std::function<void(const TsStep&)>;

/// Tabu search over the swap neighbourhood: from a seeded random start, move
/// each iteration to the best admissible neighbour (even if worse), then forbid
/// both facilities from returning to the locations they left for `tenure` iterations.
RunResult ts_run(const QapInstance& inst, const TsConfig& cfg, const StopCondition& stop,
                 std::uint64_t seed, const TsObserver& observer = {});

}  // namespace qap
