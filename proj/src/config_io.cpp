#include "infodisc/config_io.hpp"

#include <fstream>
#include <sstream>

namespace infodisc {

using nlohmann::json;

namespace {

template <class T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

Capacity capacity_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return Capacity::unlimited();
    throw ConfigError("cap must be an integer or \"inf\"");
  }
  if (!j.is_number_integer()) throw ConfigError("cap must be an integer or \"inf\"");
  return Capacity::of(j.get<int>());
}

}  // namespace

MarketConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  MarketConfig cfg;
  cfg.belief.prior = required<double>(j, "q0");
  cfg.belief.bias = required<double>(j, "eps0");
  cfg.buyers = j.contains("k") ? required<int>(j, "k") : 1;
  if (!j.contains("sellers") || !j.at("sellers").is_array())
    throw ConfigError("missing seller array");
  for (const auto& s : j.at("sellers")) {
    SellerParams p;
    p.id = required<int>(s, "id");
    p.quality = required<double>(s, "q");
    p.cost = required<double>(s, "c");
    if (s.contains("cap")) p.capacity = capacity_from_json(s.at("cap"));
    cfg.sellers.push_back(p);
  }
  return cfg;
}

json config_to_json(const MarketConfig& cfg) {
  json sellers = json::array();
  for (const auto& s : cfg.sellers) {
    json cap = s.capacity.is_unlimited() ? json("inf") : json(s.capacity.units());
    sellers.push_back({{"id", s.id}, {"q", s.quality}, {"c", s.cost}, {"cap", cap}});
  }
  return {{"q0", cfg.belief.prior},
          {"eps0", cfg.belief.bias},
          {"k", cfg.buyers},
          {"sellers", sellers}};
}

StrategyProfile profile_from_json(const json& j) {
  StrategyProfile p;
  p.disclosure = required<std::vector<double>>(j, "alpha");
  p.prices = required<std::vector<double>>(j, "p");
  return p;
}

json profile_to_json(const StrategyProfile& profile) {
  return {{"alpha", profile.disclosure}, {"p", profile.prices}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

MarketConfig load_config(const std::string& path) {
  return validate_config(config_from_json(read_json_file(path))).config;
}

std::optional<StrategyProfile> load_profile(const std::string& path) {
  const json j = read_json_file(path);
  if (!j.contains("profile")) return std::nullopt;
  return profile_from_json(j.at("profile"));
}

json report_to_json(const EquilibriumReport& report) {
  json eqs = json::array();
  for (const auto& e : report.equilibria) {
    json item = {{"disclosers", e.disclosers},
                 {"label", e.label},
                 {"numeric_prices", e.numeric_prices},
                 {"argmin_tie", e.argmin_tie}};
    if (!e.prices.empty()) item["prices"] = e.prices;
    if (!e.expected_profits.empty()) item["expected_profits"] = e.expected_profits;
    eqs.push_back(item);
  }
  return {{"scenario", to_string(report.scenario)},
          {"multiple", report.multiple},
          {"truncated", report.truncated},
          {"count", report.equilibria.size()},
          {"equilibria", eqs}};
}

}  // namespace infodisc
