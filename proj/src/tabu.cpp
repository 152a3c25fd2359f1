#include "qap/tabu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "qap/error.hpp"
#include "qap/rng.hpp"

namespace qap {

void TsConfig::validate() const {
  if (tenure && *tenure < 1) {
    throw ConfigError("TS tenure must be at least 1");
  }
  if (!(candidate_fraction > 0.0 && candidate_fraction <= 1.0)) {
    throw ConfigError("TS candidate_fraction must lie in (0, 1]");
  }
}

std::uint64_t TabuList::move_release(const Assignment& current, SwapMove m) const {
  return std::max(expiry(m.i, current[m.j]), expiry(m.j, current[m.i]));
}

bool is_admissible(const TabuList& tabu, const Assignment& current, SwapMove move,
                   std::uint64_t iteration, Cost move_cost, Cost best_cost) {
  return !tabu.move_is_tabu(current, move, iteration) || move_cost < best_cost;
}

namespace {

constexpr std::uint64_t kDriftCheckInterval = 1000;

// Swap deltas for every pair i < j, kept current across moves. After swapping
// r and s, pairs disjoint from {r, s} are corrected in O(1); the others are
// recomputed in O(n), so one update costs O(n^2) instead of O(n^3).
class DeltaTable {
 public:
  DeltaTable(const QapInstance& inst, const Assignment& current)
      : inst_(inst), n_(inst.size()), delta_(n_ * n_, 0) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        at(i, j) = detail::swap_delta_unchecked(inst_, current.perm(), i, j);
      }
    }
  }

  Cost get(std::size_t i, std::size_t j) const { return delta_[i * n_ + j]; }

  // `current` already has r and s swapped.
  void update(const Assignment& current, std::size_t r, std::size_t s) {
    const SquareMatrix& a = inst_.flow();
    const SquareMatrix& b = inst_.distance();
    const auto p = current.perm();
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (i == r || i == s || j == r || j == s) {
          at(i, j) = detail::swap_delta_unchecked(inst_, p, i, j);
          continue;
        }
        at(i, j) += (a(r, i) - a(r, j) + a(s, j) - a(s, i)) *
                        (b(p[s], p[i]) - b(p[s], p[j]) + b(p[r], p[j]) - b(p[r], p[i])) +
                    (a(i, r) - a(j, r) + a(j, s) - a(i, s)) *
                        (b(p[i], p[s]) - b(p[j], p[s]) + b(p[j], p[r]) - b(p[i], p[r]));
      }
    }
  }

 private:
  Cost& at(std::size_t i, std::size_t j) { return delta_[i * n_ + j]; }

  const QapInstance& inst_;
  std::size_t n_;
  std::vector<Cost> delta_;
};

struct Candidate {
  SwapMove move;
  Cost cost = std::numeric_limits<Cost>::max();
  std::uint64_t release = std::numeric_limits<std::uint64_t>::max();
  std::size_t order = std::numeric_limits<std::size_t>::max();  // position in move list
  bool found = false;
};

}  // namespace

RunResult ts_run(const QapInstance& inst, const TsConfig& cfg, const StopCondition& stop,
                 std::uint64_t seed, const TsObserver& observer) {
  cfg.validate();
  stop.validate();
  detail::SearchProgress progress(stop);
  Rng rng(seed);
  const std::size_t n = inst.size();
  const std::uint64_t tenure = cfg.tenure_for(n);

  Assignment current = random_assignment(n, rng);
  Cost current_cost = evaluate(inst, current);
  Assignment best = current;
  progress.begin(current_cost);

  std::vector<SwapMove> moves;
  moves.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      moves.push_back({i, j});
    }
  }
  // Sampled scans visit a random subset of move indices, reshuffled each iteration.
  const std::size_t scan_size =
      moves.empty() ? 0
                    : std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(
                                                  cfg.candidate_fraction * static_cast<double>(moves.size()))),
                                              1, moves.size());
  std::vector<std::size_t> order(moves.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    order[k] = k;
  }

  TabuList tabu(n);
  DeltaTable deltas(inst, current);
  std::uint64_t iteration = 0;
  while (!moves.empty() && !progress.should_stop(iteration)) {
    const std::uint64_t t = iteration + 1;
    const Cost best_cost = progress.best();

    if (scan_size < moves.size()) {
      for (std::size_t k = 0; k < scan_size; ++k) {
        std::swap(order[k], order[k + rng.below(moves.size() - k)]);
      }
    }

    Candidate admissible;
    Candidate fallback;
    for (std::size_t k = 0; k < scan_size; ++k) {
      const std::size_t idx = scan_size < moves.size() ? order[k] : k;
      const SwapMove m = moves[idx];
      const Cost cost = current_cost + deltas.get(m.i, m.j);
      if (is_admissible(tabu, current, m, t, cost, best_cost)) {
        if (!admissible.found || cost < admissible.cost ||
            (cost == admissible.cost && idx < admissible.order)) {
          admissible = {m, cost, 0, idx, true};
        }
      } else {
        const std::uint64_t release = tabu.move_release(current, m);
        if (!fallback.found || release < fallback.release ||
            (release == fallback.release &&
             (cost < fallback.cost || (cost == fallback.cost && idx < fallback.order)))) {
          fallback = {m, cost, release, idx, true};
        }
      }
    }

    const bool use_fallback = !admissible.found;
    const Candidate& chosen = use_fallback ? fallback : admissible;
    if (observer) {
      const bool aspirated = !use_fallback && tabu.move_is_tabu(current, chosen.move, t);
      observer(TsStep{t, current, tabu, current_cost, best_cost, chosen.move, chosen.cost,
                      aspirated, use_fallback});
    }

    const SwapMove m = chosen.move;
    const std::size_t from_i = current[m.i];
    const std::size_t from_j = current[m.j];
    current.swap_facilities(m.i, m.j);
    current_cost = chosen.cost;
    deltas.update(current, m.i, m.j);
    tabu.forbid(m.i, from_i, t + tenure + 1);
    tabu.forbid(m.j, from_j, t + tenure + 1);
    iteration = t;

    if (progress.offer(iteration, current_cost)) {
      best = current;
    }
    if (iteration % kDriftCheckInterval == 0 && evaluate(inst, current) != current_cost) {
      throw std::logic_error(fmt::format("tabu search cost drifted at iteration {}", iteration));
    }
  }

  const Cost best_cost = progress.best();
  auto trace = progress.finish(iteration);
  return RunResult(inst, std::move(best), best_cost, iteration, progress.elapsed(),
                   std::move(trace), seed);
}

}  // namespace qap
