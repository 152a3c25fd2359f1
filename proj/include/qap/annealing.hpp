#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "qap/core.hpp"
#include "qap/solver.hpp"

namespace qap {

class Rng;

struct SaConfig {
  std::optional<double> initial_temperature;          // unset: derived from the start solution
  double alpha = 0.95;                                // geometric cooling factor
  double epsilon = 1e-3;                              // temperature floor
  std::optional<std::size_t> moves_per_temperature;  // unset: 100 * n

  std::size_t moves_for(std::size_t n) const { return moves_per_temperature.value_or(100 * n); }

  /// Throws ConfigError.
  void validate() const;
};

/// 1 for delta <= 0, exp(-delta / temperature) otherwise. Throws UsageError
/// when temperature <= 0.
double acceptance_probability(Cost delta, double temperature);

/// Metropolis rule: improving and neutral moves are always taken; a worsening
/// move is taken when a uniform [0,1) draw falls below acceptance_probability.
/// Draws from `rng` only for delta > 0.
bool metropolis_accept(Cost delta, double temperature, Rng& rng);

/// T_k = T_0 * alpha^k, advanced one multiplication per cooling step.
class GeometricCooling {
 public:
  GeometricCooling(double initial, double alpha) : temperature_(initial), alpha_(alpha) {}

  double temperature() const noexcept { return temperature_; }
  std::uint64_t steps() const noexcept { return steps_; }

  double cool() noexcept {
    temperature_ *= alpha_;
    ++steps_;
    return temperature_;
  }

 private:
  double temperature_;
  double alpha_;
  std::uint64_t steps_ = 0;
};

/// Number of start-solution swaps sampled to derive the initial temperature.
inline constexpr std::size_t kTemperatureSamples = 100;
/// Acceptance probability of the mean worsening delta at the initial temperature.
inline constexpr double kInitialAcceptance = 0.8;

/// T_0 such that the mean positive delta over `kTemperatureSamples` random swaps
/// of `start` is accepted with probability kInitialAcceptance, never below
/// 2 * epsilon. Falls back to max(1, 2 * epsilon) when no sampled swap worsens the cost.
double derive_initial_temperature(const QapInstance& inst, const Assignment& start, double epsilon,
                                  Rng& rng);

struct SaOutcome {
  RunResult result;
  double initial_temperature;
  double final_temperature;
  std::uint64_t cooling_steps;
};

/// Simulated annealing: uniform random swaps, Metropolis acceptance,
/// moves_per_temperature proposals per level, T <- alpha * T until T <= epsilon
/// or `stop` fires. Iterations count proposals.
SaOutcome sa_run(const QapInstance& inst, const SaConfig& cfg, const StopCondition& stop,
                 std::uint64_t seed);

}  // namespace qap
