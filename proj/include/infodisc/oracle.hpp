#pragma once

#include <optional>
#include <string>
#include <vector>

#include "infodisc/duopoly.hpp"
#include "infodisc/market.hpp"

// Brute-force machinery that never reads a closed-form result it is meant to
// check: expected sales come from exact integration over the bias (one buyer)
// or an exact dynamic program over sequential buyers (several buyers with
// binding capacities), and equilibria come from grid search.

namespace infodisc::oracle {

struct GridSpec {
  double price_step = 0.01;
  /// Defaults to the quality span around Q0 plus 3 eps0 + 1.
  std::optional<double> price_ceiling;
  double alpha_step = 0.05;
  /// Defaults to 2 * price_step * max(1, largest price in the profile).
  std::optional<double> deviation_tolerance;
  int max_rounds = 500;

  double ceiling(const MarketConfig& cfg) const;
  double price_tolerance(double max_price) const;
  /// Disclosure levels 0, step, 2 step, ..., 1.
  std::vector<double> alpha_levels() const;
  void validate() const;
};

/// Expected units sold per seller over K sequential buyers.
///
/// Without binding capacity every buyer faces the same menu, so this is K
/// times the one-buyer choice shares. With binding capacity the disclosure
/// levels must be binary: buyers then see, on each side, only the best offer
/// with spare capacity, and the state (units sold by disclosers, units sold by
/// non-disclosers) is propagated exactly.
std::vector<double> expected_units(const MarketConfig& cfg, const StrategyProfile& profile);

/// p_i E[units_i] / min(omega_i, K) - c_i alpha_i. With one buyer this is the
/// plain expected profit; in general it is revenue per serviceable slot.
std::vector<double> expected_profits(const MarketConfig& cfg, const StrategyProfile& profile);

/// Profits of the duopoly after re-solving the pricing stage for a disclosure
/// pair: closed-form prices when disclosures differ or are both zero, the
/// Bertrand-limit payoffs when they are equal and positive. Win shares come
/// from exact integration, not from the closed-form win probability.
Pair<double> repriced_profits(Pair<double> alpha, Pair<double> quality, Pair<double> cost,
                              const Belief& belief);

/// Grid argmax of the seller's expected profit with every other strategy
/// fixed; ties go to the lower price.
double best_response_price(int seller_id, const StrategyProfile& profile, const MarketConfig& cfg,
                           const GridSpec& grid = {});

enum class PriceSolveKind { PurePrices, CycleDetected, IterationCap };

struct PriceSolve {
  PriceSolveKind kind = PriceSolveKind::IterationCap;
  /// The accepted fixed point; for CycleDetected, a grid fixed point that was
  /// rejected as a tie artifact if one was reached, otherwise empty.
  std::vector<double> prices;
  /// States visited on a best-response cycle, when one was found.
  std::vector<std::vector<double>> cycle;
  int rounds = 0;
  std::string detail;
};

/// Iterated best responses from the zero vector, the ceiling vector, a
/// closed-form guess (duopoly only) and any `extra_starts`.
///
/// When two or more sellers do not disclose they are held at price 0, since
/// they compete on identical expected quality. A grid fixed point in which a
/// seller sits just below the price at which its payoff line coincides with a
/// rival's (equal slopes, or no bias) is an undercutting artifact of the grid;
/// if every start ends in such a point or in a cycle the result is
/// CycleDetected.
PriceSolve price_equilibrium_numeric(const std::vector<double>& alpha, const MarketConfig& cfg,
                                     const GridSpec& grid = {},
                                     const std::vector<std::vector<double>>& extra_starts = {});

struct Deviation {
  int seller_id = 0;
  double disclosure = 0.0;
  double price = 0.0;  // deviating price, or the deviator's re-solved price
  double gain = 0.0;
  bool disclosure_change = false;
};

struct Verification {
  bool verified = true;
  std::optional<Deviation> worst;  // largest gain found, profitable or not
  std::optional<Deviation> worst_disclosure;  // largest gain among disclosure changes
  double tolerance = 0.0;          // threshold applied to price deviations
};

/// Scans every unilateral deviation.
///
/// Two sellers and one buyer: every gridded disclosure level with re-pricing
/// as in repriced_profits (compared against the same valuation of the current
/// disclosures, exactly within tolerance()), plus every grid price at fixed
/// disclosures. Otherwise disclosures must be binary; each seller's flip is
/// re-priced by price_equilibrium_numeric, where a cycle credits the deviator
/// with its worst payoff along the cycle.
Verification verify_equilibrium(const StrategyProfile& profile, const MarketConfig& cfg,
                                const GridSpec& grid = {});

/// Stage-I payoff tables of a duopoly on the disclosure grid, before costs.
class PatternDeriver {
 public:
  PatternDeriver(Pair<double> quality, const Belief& belief, const GridSpec& grid = {});

  struct Result {
    std::optional<PatternLabel> label;
    std::vector<Pair<double>> corner_equilibria;
    std::vector<Pair<double>> interior_equilibria;  // reported, never expected
  };

  /// Mutual best responses on the disclosure grid. A seller indifferent
  /// between levels picks the lowest: disclosure that changes nothing is not
  /// undertaken.
  Result derive(Pair<double> cost) const;

  const std::vector<double>& levels() const { return levels_; }

 private:
  std::vector<double> levels_;
  std::vector<double> gross1_;  // [a1 * n + a2]
  std::vector<double> gross2_;
};

using PatternDerivation = PatternDeriver::Result;

/// Pattern of the equilibrium set in input order: I means the first seller
/// alone discloses. Candidates are the corners; the interior of the grid is
/// scanned too and any equilibrium found there is listed separately.
PatternDerivation derive_pattern(Pair<double> quality, Pair<double> cost, const Belief& belief,
                                 const GridSpec& grid = {});

std::string describe(const PatternDerivation& d);

struct ThresholdPoint {
  double c1 = 0.0;
  double c2 = 0.0;
  bool along_c1 = true;  // bisected along the c1 axis
  std::string from;      // label on the lower-cost side
  std::string to;
};

struct ThresholdMap {
  std::vector<double> c1_values;
  std::vector<double> c2_values;
  std::vector<std::vector<std::string>> labels;  // [c1 index][c2 index]
  std::vector<ThresholdPoint> points;
};

/// Pattern labels on a resolution x resolution cost grid plus the pattern
/// changes located by bisection along every grid line.
ThresholdMap derive_pattern_thresholds(Pair<double> quality, const Belief& belief,
                                       Pair<double> c_range, int resolution,
                                       const GridSpec& grid = {});

std::string label_or_anomaly(const std::optional<PatternLabel>& label);

}  // namespace infodisc::oracle
