#pragma once

#include <cstdint>
#include <variant>

#include "qap/annealing.hpp"
#include "qap/ga.hpp"
#include "qap/solver.hpp"
#include "qap/tabu.hpp"

namespace qap {

using SolverConfig = std::variant<GaConfig, TsConfig, SaConfig>;

SolverId solver_of(const SolverConfig& cfg);
SolverConfig default_config(SolverId id);

/// Dispatches to ga_run / ts_run / sa_run. Throws ConfigError before any search
/// step when the config does not belong to `solver` or fails validation.
RunResult run(SolverId solver, const QapInstance& inst, const SolverConfig& params,
              const StopCondition& stop, std::uint64_t seed);

}  // namespace qap
