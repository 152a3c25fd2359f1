#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "qap/core.hpp"
#include "qap/solver.hpp"

namespace qap {

class Rng;

/// Generational GA parameters.
struct GaConfig {
  std::size_t population_size = 100;
  double crossover_rate = 0.9;
  double mutation_rate = 0.2;  // per offspring
  std::size_t tournament_size = 3;
  std::size_t elite_count = 2;

  /// Throws ConfigError.
  void validate() const;
};

struct GaMember {
  Assignment genes;
  Cost cost;
};

using GaObserver = std::function<void(std::uint64_t generation, std::span<const GaMember>)>;

struct GaOutcome {
  RunResult result;
  std::vector<GaMember> final_population;
};

/// Runs the GA: random initial population, then per generation tournament
/// selection, order crossover, swap mutation, and replacement by the
/// `elite_count` best parents plus the best offspring. `observer`, when set,
/// sees the initial population (generation 0) and every later one.
GaOutcome ga_run(const QapInstance& inst, const GaConfig& cfg, const StopCondition& stop,
                 std::uint64_t seed, const GaObserver& observer = {});

/// Order crossover (OX) with cut points drawn uniformly.
/// Throws UsageError on a length mismatch.
std::pair<Assignment, Assignment> order_crossover(const Assignment& p1, const Assignment& p2,
                                                  Rng& rng);

/// OX with explicit cut points: each child keeps positions [first, last] of its
/// own parent and fills the rest, starting after `last` and wrapping around,
/// with the other parent's genes in that parent's order from the same position.
std::pair<Assignment, Assignment> order_crossover(const Assignment& p1, const Assignment& p2,
                                                  std::size_t first, std::size_t last);

/// Exchanges one uniformly chosen pair of distinct facilities. n < 2 is a no-op.
Assignment swap_mutation(Assignment a, Rng& rng);

}  // namespace qap
