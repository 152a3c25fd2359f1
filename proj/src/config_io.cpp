#include "qap/config_io.hpp"

#include <fmt/format.h>

#include "qap/error.hpp"

namespace qap {

using nlohmann::json;

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

void require_object(const json& j, const char* what) {
  if (!j.is_object()) {
    throw ConfigError(fmt::format("{} configuration must be a JSON object", what));
  }
}

template <typename T>
T read_number(const json& value, const std::string& key) {
  if constexpr (std::is_floating_point_v<T>) {
    if (!value.is_number()) {
      throw ConfigError(fmt::format("'{}' must be a number", key));
    }
  } else {
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
      throw ConfigError(fmt::format("'{}' must be a non-negative integer", key));
    }
  }
  return value.get<T>();
}

template <typename T>
std::optional<T> read_optional(const json& value, const std::string& key) {
  if (value.is_null()) {
    return std::nullopt;
  }
  return read_number<T>(value, key);
}

[[noreturn]] void unknown_key(const char* what, const std::string& key) {
  throw ConfigError(fmt::format("unknown {} parameter '{}'", what, key));
}

}  // namespace

json to_json(const GaConfig& cfg) {
  return {{"population_size", cfg.population_size},
          {"crossover_rate", cfg.crossover_rate},
          {"mutation_rate", cfg.mutation_rate},
          {"tournament_size", cfg.tournament_size},
          {"elite_count", cfg.elite_count}};
}

json to_json(const TsConfig& cfg) {
  return {{"tenure", optional_json(cfg.tenure)}, {"candidate_fraction", cfg.candidate_fraction}};
}

json to_json(const SaConfig& cfg) {
  return {{"initial_temperature", optional_json(cfg.initial_temperature)},
          {"alpha", cfg.alpha},
          {"epsilon", cfg.epsilon},
          {"moves_per_temperature", optional_json(cfg.moves_per_temperature)}};
}

json to_json(const StopCondition& stop) {
  json j{{"max_iterations", optional_json(stop.max_iterations)},
         {"time_limit_ms", nullptr},
         {"target_quality", optional_json(stop.target_quality)}};
  if (stop.time_limit) {
    j["time_limit_ms"] = stop.time_limit->count();
  }
  return j;
}

void update_from_json(GaConfig& cfg, const json& j) {
  require_object(j, "GA");
  for (const auto& [key, value] : j.items()) {
    if (key == "population_size") {
      cfg.population_size = read_number<std::size_t>(value, key);
    } else if (key == "crossover_rate") {
      cfg.crossover_rate = read_number<double>(value, key);
    } else if (key == "mutation_rate") {
      cfg.mutation_rate = read_number<double>(value, key);
    } else if (key == "tournament_size") {
      cfg.tournament_size = read_number<std::size_t>(value, key);
    } else if (key == "elite_count") {
      cfg.elite_count = read_number<std::size_t>(value, key);
    } else {
      unknown_key("GA", key);
    }
  }
}

void update_from_json(TsConfig& cfg, const json& j) {
  require_object(j, "TS");
  for (const auto& [key, value] : j.items()) {
    if (key == "tenure") {
      cfg.tenure = read_optional<std::size_t>(value, key);
    } else if (key == "candidate_fraction") {
      cfg.candidate_fraction = read_number<double>(value, key);
    } else {
      unknown_key("TS", key);
    }
  }
}

void update_from_json(SaConfig& cfg, const json& j) {
  require_object(j, "SA");
  for (const auto& [key, value] : j.items()) {
    if (key == "initial_temperature") {
      cfg.initial_temperature = read_optional<double>(value, key);
    } else if (key == "alpha") {
      cfg.alpha = read_number<double>(value, key);
    } else if (key == "epsilon") {
      cfg.epsilon = read_number<double>(value, key);
    } else if (key == "moves_per_temperature") {
      cfg.moves_per_temperature = read_optional<std::size_t>(value, key);
    } else {
      unknown_key("SA", key);
    }
  }
}

json defaults_json() {
  json out = json::object();
  for (SolverId id : kAllSolvers) {
    const SolverConfig cfg = default_config(id);
    json entry = std::visit([](const auto& c) { return to_json(c); }, cfg);
    out[std::string(to_string(id))] = {{"config", entry}, {"stop", to_json(default_stop(id))}};
  }
  out["TS"]["unset_means"] = {{"tenure", "n (instance size)"}};
  out["SA"]["unset_means"] = {
      {"initial_temperature", "mean positive delta of 100 random start swaps / -ln(0.8)"},
      {"moves_per_temperature", "100 * n"}};
  out["SA"]["stop_note"] = "runs until temperature <= epsilon; max_iterations is a safety cap";
  return out;
}

}  // namespace qap
