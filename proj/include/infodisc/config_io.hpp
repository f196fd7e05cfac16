#pragma once

#include <optional>
#include <string>

#include "infodisc/market.hpp"
#include "json.hpp"

namespace infodisc {

// Config schema:
//   {"q0": real, "eps0": real, "k": int,
//    "sellers": [{"id": int, "q": real, "c": real, "cap": int | "inf"}],
//    "profile": {"alpha": [real...], "p": [real...]}}      (profile optional)
// "cap" defaults to "inf".

MarketConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const MarketConfig& cfg);

StrategyProfile profile_from_json(const nlohmann::json& j);
nlohmann::json profile_to_json(const StrategyProfile& profile);

/// Reads and parses a config file; parse failures become ConfigError.
nlohmann::json read_json_file(const std::string& path);

MarketConfig load_config(const std::string& path);
std::optional<StrategyProfile> load_profile(const std::string& path);

nlohmann::json report_to_json(const EquilibriumReport& report);

}  // namespace infodisc
