#include "infodisc/market.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <sstream>

namespace infodisc {

namespace {
std::atomic<double> g_tolerance{1e-9};
}  // namespace

double tolerance() { return g_tolerance.load(std::memory_order_relaxed); }

void set_tolerance(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  g_tolerance.store(tol, std::memory_order_relaxed);
}

Capacity Capacity::of(int units) {
  if (units < 1) throw ConfigError("capacity must be >= 1");
  return Capacity(units);
}

int Capacity::units() const {
  if (!units_) throw std::logic_error("unlimited capacity has no unit count");
  return *units_;
}

int Capacity::slots(int buyers) const {
  return units_ ? std::min(*units_, buyers) : buyers;
}

int MarketConfig::index_of(int id) const {
  for (std::size_t i = 0; i < sellers.size(); ++i) {
    if (sellers[i].id == id) return static_cast<int>(i);
  }
  throw ConfigError("unknown seller id " + std::to_string(id));
}

double MarketConfig::max_quality() const {
  double q = 0.0;
  for (const auto& s : sellers) q = std::max(q, s.quality);
  return q;
}

ValidatedConfig validate_config(const MarketConfig& cfg) {
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(cfg.belief.prior) || cfg.belief.prior <= 0.0)
    throw ConfigError("prior q0 must be positive");
  if (!finite(cfg.belief.bias) || cfg.belief.bias < 0.0)
    throw ConfigError("bias eps0 must be non-negative");
  if (cfg.buyers < 1) throw ConfigError("buyer count k must be >= 1");
  if (cfg.sellers.empty()) throw ConfigError("seller list is empty");

  std::set<int> ids;
  for (const auto& s : cfg.sellers) {
    if (!finite(s.quality) || s.quality < 0.0)
      throw ConfigError("seller " + std::to_string(s.id) + ": negative quality");
    if (!finite(s.cost) || s.cost < 0.0)
      throw ConfigError("seller " + std::to_string(s.id) + ": negative cost");
    if (!s.capacity.is_unlimited() && s.capacity.units() < 1)
      throw ConfigError("seller " + std::to_string(s.id) + ": capacity < 1");
    if (!ids.insert(s.id).second)
      throw ConfigError("duplicate seller id " + std::to_string(s.id));
  }

  ValidatedConfig out{cfg, {}};
  if (!cfg.belief.within_assumption()) {
    std::ostringstream msg;
    msg << "eps0 > q0/3 (eps0=" << cfg.belief.bias << ", q0=" << cfg.belief.prior
        << "): closed-form results do not apply";
    out.warnings.push_back(msg.str());
  }
  return out;
}

void validate_profile(const StrategyProfile& profile, const MarketConfig& cfg) {
  const auto n = cfg.sellers.size();
  if (profile.disclosure.size() != n || profile.prices.size() != n)
    throw ConfigError("profile length does not match seller count");
  for (std::size_t i = 0; i < n; ++i) {
    const double a = profile.disclosure[i];
    if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("disclosure level outside [0,1]");
    if (!(profile.prices[i] >= 0.0) || !std::isfinite(profile.prices[i]))
      throw ConfigError("negative price");
  }
}

double buyer_payoff(double disclosure, double quality, double price, double bias,
                    const Belief& belief) {
  return disclosure * quality + (1.0 - disclosure) * (belief.prior + bias) - price;
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::Duopoly: return "duopoly";
    case Scenario::Unlimited: return "unlimited";
    case Scenario::Single: return "single";
    case Scenario::Limited: return "limited";
  }
  return "unknown";
}

Scenario scenario_from_string(const std::string& s) {
  if (s == "duopoly") return Scenario::Duopoly;
  if (s == "unlimited") return Scenario::Unlimited;
  if (s == "single") return Scenario::Single;
  if (s == "limited") return Scenario::Limited;
  throw ConfigError("unknown scenario '" + s + "'");
}

}  // namespace infodisc
