#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace infodisc {

/// Absolute tolerance shared by every floating-point comparison in the library.
/// Defaults to 1e-9.
double tolerance();
void set_tolerance(double tol);

template <class T>
using Pair = std::array<T, 2>;

/// Raised for malformed market inputs. The CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by closed-form operations when the bias exceeds Q0/3 or is zero
/// where the closed form is undefined.
class AssumptionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Number of buyers a seller can serve, or unlimited.
class Capacity {
 public:
  static Capacity unlimited() { return Capacity(); }
  static Capacity of(int units);

  bool is_unlimited() const { return !units_.has_value(); }
  int units() const;
  /// Slots usable in a market of `buyers` buyers: min(capacity, buyers).
  int slots(int buyers) const;

  friend bool operator==(const Capacity&, const Capacity&) = default;

 private:
  Capacity() = default;
  explicit Capacity(int units) : units_(units) {}
  std::optional<int> units_;
};

struct SellerParams {
  int id = 0;
  double quality = 0.0;
  double cost = 0.0;
  Capacity capacity = Capacity::unlimited();
};

/// Buyers' prior Q0 and half-width eps0 of the uniform estimation bias.
struct Belief {
  double prior = 10.0;
  double bias = 2.0;

  /// True when eps0 <= Q0/3, the range the closed forms are derived for.
  bool within_assumption() const { return bias <= prior / 3.0 + tolerance(); }
};

struct MarketConfig {
  Belief belief;
  int buyers = 1;
  std::vector<SellerParams> sellers;

  int seller_count() const { return static_cast<int>(sellers.size()); }
  /// Index of the seller with the given id; throws ConfigError if absent.
  int index_of(int id) const;
  double max_quality() const;
};

struct ValidatedConfig {
  MarketConfig config;
  std::vector<std::string> warnings;
};

/// Checks every MarketConfig invariant. Errors throw ConfigError; a bias above
/// Q0/3 only produces a warning.
ValidatedConfig validate_config(const MarketConfig& cfg);

/// Disclosure levels and prices, one entry per seller in roster order.
struct StrategyProfile {
  std::vector<double> disclosure;
  std::vector<double> prices;

  std::size_t size() const { return disclosure.size(); }
};

/// Throws ConfigError unless the profile matches the roster and is in range.
void validate_profile(const StrategyProfile& profile, const MarketConfig& cfg);

enum class ChoiceKind { Seller, Tie, Exit };

/// One buyer's decision. `sellers` holds the chosen seller id, every tied id,
/// or nothing on exit.
struct BuyerOutcome {
  ChoiceKind kind = ChoiceKind::Exit;
  std::vector<int> sellers;
  double bias = 0.0;
  double payoff = 0.0;
};

/// Buyer payoff when purchasing from a seller, given the realized bias.
double buyer_payoff(double disclosure, double quality, double price, double bias,
                    const Belief& belief);

enum class Scenario { Duopoly, Unlimited, Single, Limited };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

struct Equilibrium {
  std::vector<int> disclosers;  // seller ids, ascending
  std::vector<double> prices;   // roster order; empty when not computed
  std::vector<double> expected_profits;
  std::string label;
  bool numeric_prices = false;
  bool argmin_tie = false;
};

struct EquilibriumReport {
  Scenario scenario = Scenario::Unlimited;
  std::vector<Equilibrium> equilibria;
  bool multiple = false;
  bool truncated = false;
};

}  // namespace infodisc
