#pragma once

#include <cstddef>

#include "infodisc/market.hpp"
#include "infodisc/oracle.hpp"

// N sellers, K buyers, binary disclosure.

namespace infodisc {

/// Whether disclosing alone, against non-disclosers priced at zero, pays for
/// its cost. Throws AssumptionError for eps0 == 0 or eps0 > Q0/3.
bool eligible(double quality, double cost, const Belief& belief);

struct MonopolyPrice {
  double price = 0.0;
  double gross_profit = 0.0;  // expected revenue per buyer, before the privacy cost
};

/// Revenue-maximizing price of a sole discloser whose rivals price at zero.
MonopolyPrice monopoly_disclosure_price(double quality, const Belief& belief);

struct EnumerationOptions {
  std::size_t max_sets = 10000;
  /// Prices of multi-discloser equilibria are solved numerically only up to
  /// this many sellers; larger reports leave prices empty.
  int numeric_price_limit = 12;
  /// Solve and report prices for multi-discloser sets. Prices that decide
  /// which member is least attractive are solved regardless.
  bool solve_prices = true;
  oracle::GridSpec grid;
};

/// All equilibria with unlimited capacities. Every capacity must be unlimited.
EquilibriumReport equilibria_unlimited(const MarketConfig& cfg, const EnumerationOptions& = {});

/// All equilibria when each seller serves one buyer. Requires N > K.
EquilibriumReport equilibria_single(const MarketConfig& cfg, const EnumerationOptions& = {});

/// All equilibria with finite capacities. Requires total supply > K.
EquilibriumReport equilibria_limited(const MarketConfig& cfg, const EnumerationOptions& = {});

/// Dispatches on the scenario. Duopoly lists the corner equilibria found by
/// the disclosure-grid derivation with their closed-form prices.
EquilibriumReport equilibria(const MarketConfig& cfg, Scenario scenario,
                             const EnumerationOptions& = {});

/// Whether a seller with (quality, cost) joined to `population` discloses in
/// some equilibrium, when every seller (the probe included) has capacity
/// `capacity`.
bool member_of_some_equilibrium(const MarketConfig& population, double quality, double cost,
                                Capacity capacity);

struct CountRange {
  std::size_t min = 0;
  std::size_t max = 0;
};

struct OrderingReport {
  CountRange unlimited;
  CountRange limited;
  CountRange single;
  /// max |unlimited| <= max |limited| <= max |single|.
  bool holds = false;
  /// Every cross-scenario triple is ordered: max of each scenario is at most
  /// the min of the next.
  bool holds_for_all_triples = false;
  bool truncated = false;
};

/// Discloser counts of the same roster under unlimited, limited (every
/// capacity `omega`) and single capacity.
OrderingReport disclosure_count_ordering(const MarketConfig& base, int omega,
                                         const EnumerationOptions& = {});

}  // namespace infodisc
