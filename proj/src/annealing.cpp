#include "qap/annealing.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qap/error.hpp"
#include "qap/rng.hpp"

namespace qap {

void SaConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("SA alpha must lie in (0, 1)");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("SA epsilon must be positive");
  }
  if (initial_temperature &&
      (!std::isfinite(*initial_temperature) || !(*initial_temperature > epsilon))) {
    throw ConfigError(fmt::format("SA initial_temperature {} must exceed epsilon {}",
                                  *initial_temperature, epsilon));
  }
  if (moves_per_temperature && *moves_per_temperature < 1) {
    throw ConfigError("SA moves_per_temperature must be at least 1");
  }
}

double acceptance_probability(Cost delta, double temperature) {
  if (!(temperature > 0.0)) {
    throw UsageError(fmt::format("temperature must be positive, got {}", temperature));
  }
  if (delta <= 0) {
    return 1.0;
  }
  return std::exp(-static_cast<double>(delta) / temperature);
}

bool metropolis_accept(Cost delta, double temperature, Rng& rng) {
  if (delta <= 0) {
    return true;
  }
  return rng.uniform01() < acceptance_probability(delta, temperature);
}

double derive_initial_temperature(const QapInstance& inst, const Assignment& start, double epsilon,
                                  Rng& rng) {
  const double fallback = std::max(1.0, 2.0 * epsilon);
  const std::size_t n = inst.size();
  if (n < 2) {
    return fallback;
  }
  double sum = 0.0;
  std::size_t worsening = 0;
  for (std::size_t k = 0; k < kTemperatureSamples; ++k) {
    const auto [i, j] = rng.distinct_pair(n);
    const Cost delta = detail::swap_delta_unchecked(inst, start.perm(), i, j);
    if (delta > 0) {
      sum += static_cast<double>(delta);
      ++worsening;
    }
  }
  if (worsening == 0) {
    return fallback;
  }
  const double mean = sum / static_cast<double>(worsening);
  return std::max(mean / -std::log(kInitialAcceptance), 2.0 * epsilon);
}

SaOutcome sa_run(const QapInstance& inst, const SaConfig& cfg, const StopCondition& stop,
                 std::uint64_t seed) {
  cfg.validate();
  stop.validate();
  detail::SearchProgress progress(stop, 64);
  Rng rng(seed);
  const std::size_t n = inst.size();

  Assignment current = random_assignment(n, rng);
  Cost current_cost = evaluate(inst, current);
  Assignment best = current;
  progress.begin(current_cost);

  const double t0 = cfg.initial_temperature
                        ? *cfg.initial_temperature
                        : derive_initial_temperature(inst, current, cfg.epsilon, rng);
  GeometricCooling cooling(t0, cfg.alpha);
  const std::size_t moves_per_level = cfg.moves_for(n);

  std::uint64_t proposals = 0;
  bool stopped = false;
  while (!stopped && cooling.temperature() > cfg.epsilon) {
    const double temperature = cooling.temperature();
    for (std::size_t k = 0; k < moves_per_level; ++k) {
      if (progress.should_stop(proposals)) {
        stopped = true;
        break;
      }
      ++proposals;
      if (n < 2) {
        continue;
      }
      const auto [i, j] = rng.distinct_pair(n);
      const Cost delta = detail::swap_delta_unchecked(inst, current.perm(), i, j);
      if (metropolis_accept(delta, temperature, rng)) {
        current.swap_facilities(i, j);
        current_cost += delta;
        if (progress.offer(proposals, current_cost)) {
          best = current;
        }
      }
    }
    if (!stopped) {
      cooling.cool();
    }
  }

  const Cost best_cost = progress.best();
  auto trace = progress.finish(proposals);
  return {RunResult(inst, std::move(best), best_cost, proposals, progress.elapsed(),
                    std::move(trace), seed),
          t0, cooling.temperature(), cooling.steps()};
}

}  // namespace qap
