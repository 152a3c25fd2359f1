#pragma once

#include <json.hpp>

#include "qap/run.hpp"

namespace qap {

nlohmann::json to_json(const GaConfig& cfg);
nlohmann::json to_json(const TsConfig& cfg);
nlohmann::json to_json(const SaConfig& cfg);
nlohmann::json to_json(const StopCondition& stop);

/// Overwrites the fields named in `j`. Unset optionals are written as null.
/// Throws ConfigError on unknown keys or values of the wrong type.
void update_from_json(GaConfig& cfg, const nlohmann::json& j);
void update_from_json(TsConfig& cfg, const nlohmann::json& j);
void update_from_json(SaConfig& cfg, const nlohmann::json& j);

/// Every solver's default configuration and budget.
nlohmann::json defaults_json();

}  // namespace qap
