#pragma once

#include <stdexcept>
#include <string>

#include "infodisc/market.hpp"

// Closed-form analysis of the two-seller, one-buyer game.
//
// Seller "1" and "2" refer to the two entries of each Pair. Every operation
// accepts the sellers in either order; the relabeling so that Q1 >= Q2 happens
// internally where a result depends on it.

namespace infodisc {

/// Expected-quality gap alpha_i (Q_i - Q0) - alpha_j (Q_j - Q0) at zero bias.
double psi(double alpha_i, double alpha_j, double q_i, double q_j, double prior);

/// Choice of a single buyer facing every seller in `cfg` at a realized bias.
/// Throws ConfigError when |eps| exceeds the bias support.
BuyerOutcome buyer_choice(const StrategyProfile& profile, double eps, const MarketConfig& cfg);

/// Selection probabilities averaged over eps ~ U(-eps0, eps0), comparing the two
/// sellers against each other (the exit option is not modelled here). With
/// eps0 = 0 the result is the indicator 1, 1/2 or 0.
Pair<double> win_probability(Pair<double> alpha, Pair<double> price, Pair<double> quality,
                             const Belief& belief);

enum class PricingKind { PurePrices, NoPureEquilibrium, ZeroZero };

/// Which branch of the pricing equilibrium produced the prices.
enum class PricingBranch {
  FirstPricesZero,   // psi <= -3 xi: seller 1 prices at zero
  Interior,          // |psi| < 3 xi: both prices positive
  SecondPricesZero,  // psi >= 3 xi: seller 2 prices at zero
  EqualDisclosure,   // alpha1 == alpha2 > 0
  NoDisclosure,      // alpha1 == alpha2 == 0
};

struct PricingOutcome {
  PricingKind kind = PricingKind::ZeroZero;
  PricingBranch branch = PricingBranch::NoDisclosure;
  Pair<double> prices{0.0, 0.0};  // meaningful unless kind == NoPureEquilibrium
  double psi = 0.0;
  double xi = 0.0;
};

/// Prices of one of the three unequal-disclosure branches, evaluated at any
/// (psi, xi) regardless of which branch the pair falls in.
Pair<double> branch_prices(PricingBranch branch, double psi, double xi);

PricingOutcome pricing_equilibrium(Pair<double> alpha, Pair<double> quality,
                                   const Belief& belief);

/// Payoffs used when both sellers disclose the same positive level and no pure
/// pricing equilibrium exists: price competition drives the lower-quality
/// seller to zero, so the higher-quality seller keeps alpha (Q_hi - Q_lo) and
/// the other only pays its privacy cost.
Pair<double> bertrand_limit_profits(double alpha, Pair<double> quality, Pair<double> cost);

/// Stage-I expected profits after the pricing stage resolves.
///
/// For unequal disclosure: equilibrium price times win probability, minus
/// c * alpha. Equal positive disclosure uses bertrand_limit_profits; no
/// disclosure yields (0, 0). This is a composition of the pricing and choice
/// results rather than an independently derived closed form.
Pair<double> stage1_expected_profits(Pair<double> alpha, Pair<double> quality,
                                     Pair<double> cost, const Belief& belief);

enum class QualityCategory { Good, Medium, Poor };

/// Good iff Q >= Q0 + 3 eps0, Poor iff Q < Q0 - 3 eps0, Medium otherwise.
QualityCategory quality_category(double quality, const Belief& belief);

enum class StructureLabel { AllAchievable, NoMixedPattern, LNeverDisclosure, NoneDisclosure };

enum class PatternLabel { I, II, III, IV };

struct StructureClassification {
  StructureLabel label = StructureLabel::NoneDisclosure;
  /// Set when (Q1, Q2) sits on a region boundary within tolerance(); the label
  /// then follows the written interval endpoints.
  bool on_boundary = false;
};

/// Which behavior patterns can occur for a pair of qualities.
/// Throws AssumptionError for eps0 == 0 or eps0 > Q0/3.
StructureLabel classify_structure(double q1, double q2, const Belief& belief);
StructureClassification classify_structure_detailed(double q1, double q2, const Belief& belief);

bool pattern_achievable(StructureLabel structure, PatternLabel pattern);

/// Raised when the numeric derivation cannot produce a pattern consistent with
/// the quality structure.
class PatternAnomaly : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Equilibrium behavior pattern for the given qualities and costs. The cost
/// thresholds separating patterns have no closed form here, so the pattern is
/// derived by the numeric oracle and checked against classify_structure.
/// Patterns are labelled with seller 1 as the higher-quality seller.
PatternLabel behavior_pattern(Pair<double> quality, Pair<double> cost, const Belief& belief);

std::string to_string(PricingKind k);
std::string to_string(PricingBranch b);
std::string to_string(QualityCategory c);
std::string to_string(StructureLabel s);
std::string to_string(PatternLabel p);

}  // namespace infodisc
