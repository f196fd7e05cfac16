#include "infodisc/choice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace infodisc::oracle {

double tie_epsilon(double scale) { return 1e-12 * (1.0 + std::abs(scale)); }

namespace {

// Splits `mass` among the offers tied at the top at bias value `eps`.
void assign_point(std::span<const Offer> offers, double eps, double mass,
                  std::span<double> share, double& exit) {
  double best = -INFINITY;
  for (const auto& o : offers) best = std::max(best, o.intercept + o.slope * eps);
  const double tie = tie_epsilon(best);
  if (best < -tie) {
    exit += mass;
    return;
  }
  double weight = 0.0;
  for (const auto& o : offers) {
    if (o.intercept + o.slope * eps >= best - tie) weight += o.weight;
  }
  for (std::size_t i = 0; i < offers.size(); ++i) {
    const auto& o = offers[i];
    if (o.intercept + o.slope * eps >= best - tie) share[i] += mass * o.weight / weight;
  }
}

}  // namespace

void choice_shares(std::span<const Offer> offers, double bias, std::span<double> share,
                   double& exit) {
  if (share.size() != offers.size()) throw std::invalid_argument("share size mismatch");
  std::fill(share.begin(), share.end(), 0.0);
  exit = 0.0;
  if (offers.empty()) {
    exit = 1.0;
    return;
  }
  if (bias <= 0.0) {
    assign_point(offers, 0.0, 1.0, share, exit);
    return;
  }

  // Upper envelope of affine payoffs (and the zero reservation line) changes
  // only where two lines cross, so the winner is constant between crossings.
  thread_local std::vector<double> cuts;
  cuts.clear();
  cuts.push_back(-bias);
  cuts.push_back(bias);
  const auto add_cut = [&](double x) {
    if (x > -bias && x < bias) cuts.push_back(x);
  };
  for (std::size_t i = 0; i < offers.size(); ++i) {
    const auto& a = offers[i];
    if (a.slope != 0.0) add_cut(-a.intercept / a.slope);
    for (std::size_t j = i + 1; j < offers.size(); ++j) {
      const auto& b = offers[j];
      if (a.slope != b.slope) add_cut((b.intercept - a.intercept) / (a.slope - b.slope));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  const double width = 2.0 * bias;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k];
    const double hi = cuts[k + 1];
    if (hi <= lo) continue;
    assign_point(offers, 0.5 * (lo + hi), (hi - lo) / width, share, exit);
  }
}

ChoiceShares choice_shares(std::span<const Offer> offers, double bias) {
  ChoiceShares out;
  out.share.assign(offers.size(), 0.0);
  choice_shares(offers, bias, out.share, out.exit);
  return out;
}

std::vector<int> best_offers(std::span<const Offer> offers, double eps) {
  double best = -INFINITY;
  for (const auto& o : offers) best = std::max(best, o.intercept + o.slope * eps);
  const double tie = tie_epsilon(best);
  std::vector<int> out;
  if (offers.empty() || best < -tie) return out;
  for (std::size_t i = 0; i < offers.size(); ++i) {
    if (offers[i].intercept + offers[i].slope * eps >= best - tie)
      out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace infodisc::oracle
