#include "qap/ga.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "qap/error.hpp"
#include "qap/rng.hpp"

namespace qap {

void GaConfig::validate() const {
  if (population_size < 2) {
    throw ConfigError("GA population_size must be at least 2");
  }
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    throw ConfigError("GA crossover_rate must lie in [0, 1]");
  }
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    throw ConfigError("GA mutation_rate must lie in [0, 1]");
  }
  if (tournament_size < 1 || tournament_size > population_size) {
    throw ConfigError(fmt::format("GA tournament_size must lie in [1, {}]", population_size));
  }
  if (elite_count >= population_size) {
    throw ConfigError("GA elite_count must be smaller than population_size");
  }
}

namespace {

// One OX child: keeps keeper[first..last], fills the rest from donor.
Assignment ox_child(std::span<const std::size_t> keeper, std::span<const std::size_t> donor,
                    std::size_t first, std::size_t last) {
  const std::size_t n = keeper.size();
  std::vector<std::size_t> child(n);
  std::vector<bool> used(n, false);
  for (std::size_t k = first; k <= last; ++k) {
    child[k] = keeper[k];
    used[keeper[k]] = true;
  }
  std::size_t write = (last + 1) % n;
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t gene = donor[(last + 1 + step) % n];
    if (used[gene]) {
      continue;
    }
    child[write] = gene;
    used[gene] = true;
    write = (write + 1) % n;
  }
  return Assignment(std::move(child));
}

const GaMember& tournament(std::span<const GaMember> pop, std::size_t size, Rng& rng) {
  const GaMember* winner = &pop[rng.below(pop.size())];
  for (std::size_t k = 1; k < size; ++k) {
    const GaMember& challenger = pop[rng.below(pop.size())];
    if (challenger.cost < winner->cost) {
      winner = &challenger;
    }
  }
  return *winner;
}

void sort_by_cost(std::vector<GaMember>& members) {
  std::stable_sort(members.begin(), members.end(),
                   [](const GaMember& a, const GaMember& b) { return a.cost < b.cost; });
}

}  // namespace

std::pair<Assignment, Assignment> order_crossover(const Assignment& p1, const Assignment& p2,
                                                  std::size_t first, std::size_t last) {
  if (p1.size() != p2.size()) {
    throw UsageError(fmt::format("crossover parents differ in length ({} vs {})", p1.size(),
                                 p2.size()));
  }
  if (first > last || last >= p1.size()) {
    throw UsageError(fmt::format("crossover cut [{}, {}] invalid for length {}", first, last,
                                 p1.size()));
  }
  return {ox_child(p1.perm(), p2.perm(), first, last), ox_child(p2.perm(), p1.perm(), first, last)};
}

std::pair<Assignment, Assignment> order_crossover(const Assignment& p1, const Assignment& p2,
                                                  Rng& rng) {
  if (p1.size() != p2.size()) {
    throw UsageError(fmt::format("crossover parents differ in length ({} vs {})", p1.size(),
                                 p2.size()));
  }
  std::size_t a = rng.below(p1.size());
  std::size_t b = rng.below(p1.size());
  if (a > b) {
    std::swap(a, b);
  }
  return order_crossover(p1, p2, a, b);
}

Assignment swap_mutation(Assignment a, Rng& rng) {
  if (a.size() < 2) {
    return a;
  }
  const auto [i, j] = rng.distinct_pair(a.size());
  a.swap_facilities(i, j);
  return a;
}

GaOutcome ga_run(const QapInstance& inst, const GaConfig& cfg, const StopCondition& stop,
                 std::uint64_t seed, const GaObserver& observer) {
  cfg.validate();
  stop.validate();
  detail::SearchProgress progress(stop);
  Rng rng(seed);
  const std::size_t n = inst.size();
  const std::size_t pop_size = cfg.population_size;

  std::vector<GaMember> population;
  population.reserve(pop_size);
  for (std::size_t k = 0; k < pop_size; ++k) {
    Assignment a = random_assignment(n, rng);
    const Cost c = evaluate(inst, a);
    population.push_back({std::move(a), c});
  }
  auto best_of = [](const std::vector<GaMember>& members) {
    return std::min_element(members.begin(), members.end(),
                            [](const GaMember& a, const GaMember& b) { return a.cost < b.cost; });
  };
  Assignment best = best_of(population)->genes;
  progress.begin(best_of(population)->cost);
  if (observer) {
    observer(0, population);
  }

  std::vector<GaMember> offspring;
  offspring.reserve(pop_size + 1);
  std::uint64_t generation = 0;
  while (!progress.should_stop(generation)) {
    offspring.clear();
    while (offspring.size() < pop_size) {
      const GaMember& mother = tournament(population, cfg.tournament_size, rng);
      const GaMember& father = tournament(population, cfg.tournament_size, rng);
      auto [first, second] = rng.bernoulli(cfg.crossover_rate)
                                 ? order_crossover(mother.genes, father.genes, rng)
                                 : std::pair{mother.genes, father.genes};
      for (Assignment* child : {&first, &second}) {
        if (offspring.size() == pop_size) {
          break;
        }
        if (rng.bernoulli(cfg.mutation_rate)) {
          *child = swap_mutation(std::move(*child), rng);
        }
        const Cost c = evaluate(inst, *child);
        offspring.push_back({std::move(*child), c});
      }
    }
    ++generation;

    // Next generation: elite parents, then the best offspring, ties by insertion order.
    sort_by_cost(population);
    sort_by_cost(offspring);
    population.erase(population.begin() + static_cast<std::ptrdiff_t>(cfg.elite_count),
                     population.end());
    for (std::size_t k = 0; population.size() < pop_size; ++k) {
      population.push_back(std::move(offspring[k]));
    }

    const auto gen_best = best_of(population);
    if (progress.offer(generation, gen_best->cost)) {
      best = gen_best->genes;
    }
    if (observer) {
      observer(generation, population);
    }
  }

  const Cost best_cost = progress.best();
  auto trace = progress.finish(generation);
  return {RunResult(inst, std::move(best), best_cost, generation, progress.elapsed(),
                    std::move(trace), seed),
          std::move(population)};
}

}  // namespace qap
