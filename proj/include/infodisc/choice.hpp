#pragma once

#include <span>
#include <vector>

namespace infodisc::oracle {

/// A seller's offer as seen by a buyer: payoff(eps) = intercept + slope * eps.
/// `weight` counts identical sellers pooled behind one offer; ties are split in
/// proportion to weight.
struct Offer {
  double intercept = 0.0;
  double slope = 0.0;
  double weight = 1.0;
};

struct ChoiceShares {
  std::vector<double> share;  // probability that each offer is chosen
  double exit = 0.0;          // probability that every payoff is negative
};

/// Exact choice probabilities for eps ~ U(-bias, bias). The buyer takes the
/// highest payoff, buys at payoff >= 0 and exits below zero. bias == 0 is the
/// point mass at eps = 0.
ChoiceShares choice_shares(std::span<const Offer> offers, double bias);

/// Allocation-free variant; `share` must have offers.size() entries.
void choice_shares(std::span<const Offer> offers, double bias, std::span<double> share,
                   double& exit);

/// Offers achieving the maximum payoff at a realized bias, or empty on exit.
std::vector<int> best_offers(std::span<const Offer> offers, double eps);

/// Relative tolerance under which two payoffs count as tied.
double tie_epsilon(double scale);

}  // namespace infodisc::oracle
