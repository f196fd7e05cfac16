#include "infodisc/duopoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "infodisc/oracle.hpp"

namespace infodisc {

namespace {

bool close(double a, double b) { return std::abs(a - b) <= tolerance(); }

void require_closed_form_domain(const Belief& belief, const char* op) {
  if (belief.bias <= 0.0)
    throw AssumptionError(std::string(op) + ": undefined for eps0 = 0");
  if (!belief.within_assumption())
    throw AssumptionError(std::string(op) + ": requires eps0 <= q0/3");
}

}  // namespace

double psi(double alpha_i, double alpha_j, double q_i, double q_j, double prior) {
  return alpha_i * (q_i - prior) - alpha_j * (q_j - prior);
}

BuyerOutcome buyer_choice(const StrategyProfile& profile, double eps, const MarketConfig& cfg) {
  validate_profile(profile, cfg);
  if (std::abs(eps) > cfg.belief.bias + tolerance()) {
    std::ostringstream msg;
    msg << "bias " << eps << " outside [-" << cfg.belief.bias << ", " << cfg.belief.bias << "]";
    throw ConfigError(msg.str());
  }
  BuyerOutcome out;
  out.bias = eps;
  const int n = cfg.seller_count();
  std::vector<double> payoff(n);
  double best = -INFINITY;
  for (int i = 0; i < n; ++i) {
    payoff[i] = buyer_payoff(profile.disclosure[i], cfg.sellers[i].quality, profile.prices[i],
                             eps, cfg.belief);
    best = std::max(best, payoff[i]);
  }
  if (best < -tolerance()) {
    out.kind = ChoiceKind::Exit;
    out.payoff = 0.0;
    return out;
  }
  for (int i = 0; i < n; ++i) {
    if (payoff[i] >= best - tolerance()) out.sellers.push_back(cfg.sellers[i].id);
  }
  out.kind = out.sellers.size() > 1 ? ChoiceKind::Tie : ChoiceKind::Seller;
  out.payoff = best;
  return out;
}

Pair<double> win_probability(Pair<double> alpha, Pair<double> price, Pair<double> quality,
                             const Belief& belief) {
  const double gap =
      psi(alpha[0], alpha[1], quality[0], quality[1], belief.prior) - (price[0] - price[1]);
  const double dalpha = alpha[0] - alpha[1];
  const double e0 = belief.bias;
  double first;
  if (close(dalpha, 0.0) || e0 <= 0.0) {
    // Payoff difference does not depend on the bias (or the bias is a point mass).
    first = close(gap, 0.0) ? 0.5 : (gap > 0.0 ? 1.0 : 0.0);
  } else {
    const double t = gap / dalpha;
    const double raw = dalpha > 0.0 ? (t + e0) / (2.0 * e0) : (e0 - t) / (2.0 * e0);
    first = std::clamp(raw, 0.0, 1.0);
  }
  return {first, 1.0 - first};
}

Pair<double> branch_prices(PricingBranch branch, double psi_value, double xi) {
  switch (branch) {
    case PricingBranch::FirstPricesZero:
      return {0.0, -psi_value - xi};
    case PricingBranch::Interior:
      return {(3.0 * xi + psi_value) / 3.0, (3.0 * xi - psi_value) / 3.0};
    case PricingBranch::SecondPricesZero:
      return {psi_value - xi, 0.0};
    default:
      throw std::invalid_argument("branch_prices: not an unequal-disclosure branch");
  }
}

PricingOutcome pricing_equilibrium(Pair<double> alpha, Pair<double> quality,
                                   const Belief& belief) {
  PricingOutcome out;
  out.psi = psi(alpha[0], alpha[1], quality[0], quality[1], belief.prior);
  out.xi = belief.bias * std::abs(alpha[0] - alpha[1]);
  if (close(alpha[0], alpha[1])) {
    if (close(alpha[0], 0.0)) {
      out.kind = PricingKind::ZeroZero;
      out.branch = PricingBranch::NoDisclosure;
      out.prices = {0.0, 0.0};
    } else {
      out.kind = PricingKind::NoPureEquilibrium;
      out.branch = PricingBranch::EqualDisclosure;
      out.prices = {0.0, 0.0};
    }
    return out;
  }
  out.kind = PricingKind::PurePrices;
  if (out.psi <= -3.0 * out.xi)
    out.branch = PricingBranch::FirstPricesZero;
  else if (out.psi >= 3.0 * out.xi)
    out.branch = PricingBranch::SecondPricesZero;
  else
    out.branch = PricingBranch::Interior;
  out.prices = branch_prices(out.branch, out.psi, out.xi);
  return out;
}

Pair<double> bertrand_limit_profits(double alpha, Pair<double> quality, Pair<double> cost) {
  Pair<double> w{-cost[0] * alpha, -cost[1] * alpha};
  if (close(quality[0], quality[1])) return w;
  const int hi = quality[0] > quality[1] ? 0 : 1;
  w[hi] += alpha * std::abs(quality[0] - quality[1]);
  return w;
}

Pair<double> stage1_expected_profits(Pair<double> alpha, Pair<double> quality,
                                     Pair<double> cost, const Belief& belief) {
  const PricingOutcome pricing = pricing_equilibrium(alpha, quality, belief);
  switch (pricing.kind) {
    case PricingKind::ZeroZero:
      return {0.0, 0.0};
    case PricingKind::NoPureEquilibrium:
      return bertrand_limit_profits(alpha[0], quality, cost);
    case PricingKind::PurePrices:
      break;
  }
  const Pair<double> win = win_probability(alpha, pricing.prices, quality, belief);
  return {pricing.prices[0] * win[0] - cost[0] * alpha[0],
          pricing.prices[1] * win[1] - cost[1] * alpha[1]};
}

QualityCategory quality_category(double quality, const Belief& belief) {
  if (quality >= belief.prior + 3.0 * belief.bias) return QualityCategory::Good;
  if (quality < belief.prior - 3.0 * belief.bias) return QualityCategory::Poor;
  return QualityCategory::Medium;
}

StructureClassification classify_structure_detailed(double q1, double q2, const Belief& belief) {
  require_closed_form_domain(belief, "classify_structure");
  if (q2 > q1) std::swap(q1, q2);
  const double q0 = belief.prior;
  const double e = belief.bias;
  const double s5 = 3.0 * std::sqrt(5.0);
  const double low = q0 - 3.0 * e;
  const double knee = q0 + (6.0 - s5) * e;
  const double good = q0 + 3.0 * e;

  StructureClassification out;
  if (q1 < low) {
    out.label = StructureLabel::NoneDisclosure;
    out.on_boundary = close(q1, low);
    return out;
  }
  if (q2 < low) {
    // The written L region is open at Q1 = Q0 - 3 eps0; that edge is not covered
    // by any case, so it is assigned here and flagged.
    out.label = StructureLabel::LNeverDisclosure;
    out.on_boundary = close(q1, low) || close(q2, low);
    return out;
  }
  out.on_boundary = close(q2, low) || close(q1, knee) || close(q1, good);
  if (q1 < knee) {
    out.label = StructureLabel::AllAchievable;
    return out;
  }
  double curve;
  if (q1 < good) {
    const double d = q1 - q0 - 6.0 * e;
    curve = q0 - 6.0 * e + std::sqrt(std::max(0.0, 54.0 * e * e - d * d));
  } else {
    curve = q0 - 6.0 * e + s5 * e;
  }
  out.label = q2 >= curve ? StructureLabel::AllAchievable : StructureLabel::NoMixedPattern;
  out.on_boundary = out.on_boundary || close(q2, curve);
  return out;
}

StructureLabel classify_structure(double q1, double q2, const Belief& belief) {
  return classify_structure_detailed(q1, q2, belief).label;
}

bool pattern_achievable(StructureLabel structure, PatternLabel pattern) {
  switch (structure) {
    case StructureLabel::AllAchievable:
      return true;
    case StructureLabel::NoMixedPattern:
      return pattern != PatternLabel::II;
    case StructureLabel::LNeverDisclosure:
      return pattern == PatternLabel::I || pattern == PatternLabel::IV;
    case StructureLabel::NoneDisclosure:
      return pattern == PatternLabel::IV;
  }
  return false;
}

PatternLabel behavior_pattern(Pair<double> quality, Pair<double> cost, const Belief& belief) {
  require_closed_form_domain(belief, "behavior_pattern");
  if (quality[1] > quality[0]) {
    std::swap(quality[0], quality[1]);
    std::swap(cost[0], cost[1]);
  }
  const StructureLabel structure = classify_structure(quality[0], quality[1], belief);
  const oracle::PatternDerivation derived = oracle::derive_pattern(quality, cost, belief);
  if (!derived.label) {
    throw PatternAnomaly("oracle equilibrium set matches no pattern (" +
                         oracle::describe(derived) + ")");
  }
  if (!pattern_achievable(structure, *derived.label)) {
    throw PatternAnomaly("pattern " + to_string(*derived.label) + " not achievable in " +
                         to_string(structure));
  }
  return *derived.label;
}

std::string to_string(PricingKind k) {
  switch (k) {
    case PricingKind::PurePrices: return "PurePrices";
    case PricingKind::NoPureEquilibrium: return "NoPureEquilibrium";
    case PricingKind::ZeroZero: return "ZeroZero";
  }
  return "?";
}

std::string to_string(PricingBranch b) {
  switch (b) {
    case PricingBranch::FirstPricesZero: return "first-zero";
    case PricingBranch::Interior: return "interior";
    case PricingBranch::SecondPricesZero: return "second-zero";
    case PricingBranch::EqualDisclosure: return "equal-disclosure";
    case PricingBranch::NoDisclosure: return "no-disclosure";
  }
  return "?";
}

std::string to_string(QualityCategory c) {
  switch (c) {
    case QualityCategory::Good: return "G";
    case QualityCategory::Medium: return "M";
    case QualityCategory::Poor: return "P";
  }
  return "?";
}

std::string to_string(StructureLabel s) {
  switch (s) {
    case StructureLabel::AllAchievable: return "AllAchievable";
    case StructureLabel::NoMixedPattern: return "NoMixedPattern";
    case StructureLabel::LNeverDisclosure: return "LNeverDisclosure";
    case StructureLabel::NoneDisclosure: return "NoneDisclosure";
  }
  return "?";
}

std::string to_string(PatternLabel p) {
  switch (p) {
    case PatternLabel::I: return "I";
    case PatternLabel::II: return "II";
    case PatternLabel::III: return "III";
    case PatternLabel::IV: return "IV";
  }
  return "?";
}

}  // namespace infodisc
