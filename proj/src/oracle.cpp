#include "infodisc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "infodisc/choice.hpp"

namespace infodisc::oracle {

namespace {

bool is_zero(double a) { return std::abs(a) <= tolerance(); }
bool is_one(double a) { return std::abs(a - 1.0) <= tolerance(); }
bool is_binary(double a) { return is_zero(a) || is_one(a); }

Offer offer_for(const SellerParams& s, double alpha, double price, const Belief& b) {
  return {alpha * s.quality + (1.0 - alpha) * b.prior - price, 1.0 - alpha, 1.0};
}

bool capacity_binds(const MarketConfig& cfg) {
  if (cfg.buyers <= 1) return false;
  return std::any_of(cfg.sellers.begin(), cfg.sellers.end(), [&](const SellerParams& s) {
    return s.capacity.slots(cfg.buyers) < cfg.buyers;
  });
}

// Splits `units` among members so that nobody exceeds its capacity and the
// unconstrained members hold equal amounts.
std::vector<double> water_fill(double units, const std::vector<int>& caps) {
  std::vector<double> alloc(caps.size(), 0.0);
  std::vector<std::size_t> order(caps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return caps[a] < caps[b]; });
  double left = units;
  std::size_t active = caps.size();
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double level = left / static_cast<double>(active);
    if (caps[order[k]] <= level) {
      alloc[order[k]] = caps[order[k]];
      left -= caps[order[k]];
      --active;
    } else {
      for (std::size_t m = k; m < order.size(); ++m) alloc[order[m]] = level;
      break;
    }
  }
  return alloc;
}

// Sellers on one side of the market (disclosers or non-disclosers), pooled into
// groups of equal offers and ordered by how attractive the offer is.
struct Group {
  std::vector<int> members;
  std::vector<int> caps;
  int start = 0;
  int cap = 0;
  double intercept = 0.0;
};

struct Side {
  std::vector<Group> groups;
  int supply = 0;
  double slope = 0.0;

  // Group serving the next buyer when `sold` units are already gone.
  const Group* at(int sold) const {
    for (const auto& g : groups)
      if (g.start + g.cap > sold) return &g;
    return nullptr;
  }
};

Side build_side(const MarketConfig& cfg, const StrategyProfile& profile, bool disclosers) {
  Side side;
  side.slope = disclosers ? 0.0 : 1.0;
  std::vector<std::pair<double, int>> ranked;
  for (int i = 0; i < cfg.seller_count(); ++i) {
    if (is_one(profile.disclosure[i]) != disclosers) continue;
    const double base = disclosers ? cfg.sellers[i].quality : cfg.belief.prior;
    ranked.emplace_back(base - profile.prices[i], i);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [value, i] : ranked) {
    if (side.groups.empty() ||
        std::abs(side.groups.back().intercept - value) > tie_epsilon(value)) {
      Group g;
      g.intercept = value;
      g.start = side.supply;
      side.groups.push_back(g);
    }
    Group& g = side.groups.back();
    const int cap = cfg.sellers[i].capacity.slots(cfg.buyers);
    g.members.push_back(i);
    g.caps.push_back(cap);
    g.cap += cap;
    side.supply += cap;
  }
  return side;
}

// Members of `g` that still have spare capacity after `used` units.
double open_members(const Group& g, int used) {
  const auto alloc = water_fill(used, g.caps);
  double n = 0.0;
  for (std::size_t m = 0; m < alloc.size(); ++m)
    if (alloc[m] < g.caps[m] - 1e-12) n += 1.0;
  return n;
}

void add_group_units(const Group& g, const std::vector<double>& marginal,
                     std::vector<double>& units) {
  std::vector<double> by_used(g.cap + 1, 0.0);
  for (std::size_t d = 0; d < marginal.size(); ++d) {
    const int used = std::clamp(static_cast<int>(d) - g.start, 0, g.cap);
    by_used[used] += marginal[d];
  }
  for (int u = 1; u <= g.cap; ++u) {
    if (by_used[u] == 0.0) continue;
    const auto alloc = water_fill(u, g.caps);
    for (std::size_t m = 0; m < g.members.size(); ++m)
      units[g.members[m]] += by_used[u] * alloc[m];
  }
}

std::vector<double> sequential_units(const MarketConfig& cfg, const StrategyProfile& profile) {
  const int k = cfg.buyers;
  const Side disc = build_side(cfg, profile, true);
  const Side non = build_side(cfg, profile, false);
  const int td = std::min(k, disc.supply);
  const int tn = std::min(k, non.supply);
  const int width = tn + 1;
  std::vector<double> p((td + 1) * width, 0.0), next(p.size());
  p[0] = 1.0;
  Offer offers[2];
  double share[2];
  for (int buyer = 0; buyer < k; ++buyer) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int d = 0; d <= std::min(buyer, td); ++d) {
      for (int n = 0; n <= std::min(buyer - d, tn); ++n) {
        const double mass = p[d * width + n];
        if (mass == 0.0) continue;
        const Group* gd = d < disc.supply ? disc.at(d) : nullptr;
        const Group* gn = n < non.supply ? non.at(n) : nullptr;
        int count = 0;
        int which[2];
        if (gd) {
          offers[count] = {gd->intercept, disc.slope, open_members(*gd, d - gd->start)};
          which[count++] = 0;
        }
        if (gn) {
          offers[count] = {gn->intercept, non.slope, open_members(*gn, n - gn->start)};
          which[count++] = 1;
        }
        double exit = 1.0;
        if (count > 0) choice_shares(std::span(offers, count), cfg.belief.bias,
                                     std::span(share, count), exit);
        next[d * width + n] += mass * exit;
        for (int o = 0; o < count; ++o) {
          if (which[o] == 0)
            next[(d + 1) * width + n] += mass * share[o];
          else
            next[d * width + n + 1] += mass * share[o];
        }
      }
    }
    p.swap(next);
  }
  std::vector<double> md(td + 1, 0.0), mn(tn + 1, 0.0);
  for (int d = 0; d <= td; ++d)
    for (int n = 0; n <= tn; ++n) {
      md[d] += p[d * width + n];
      mn[n] += p[d * width + n];
    }
  std::vector<double> units(cfg.seller_count(), 0.0);
  for (const auto& g : disc.groups) add_group_units(g, md, units);
  for (const auto& g : non.groups) add_group_units(g, mn, units);
  return units;
}

double profit_of(const MarketConfig& cfg, const StrategyProfile& profile, int i,
                 double units) {
  const auto& s = cfg.sellers[i];
  return profile.prices[i] * units / s.capacity.slots(cfg.buyers) -
         s.cost * profile.disclosure[i];
}

int price_count(const GridSpec& grid, const MarketConfig& cfg) {
  return static_cast<int>(std::floor(grid.ceiling(cfg) / grid.price_step + 1e-9)) + 1;
}

int best_response_index(int i, StrategyProfile& trial, const MarketConfig& cfg,
                        const GridSpec& grid) {
  const int count = price_count(grid, cfg);
  int best_k = 0;
  double best = -INFINITY;
  for (int k = 0; k < count; ++k) {
    trial.prices[i] = k * grid.price_step;
    const double w = expected_profits(cfg, trial)[i];
    if (k == 0 || w > best + tie_epsilon(best)) {
      best = w;
      best_k = k;
    }
  }
  return best_k;
}

// True when some responding seller sits within one grid step below the price at
// which its payoff line coincides with a rival's.
bool undercut_artifact(const std::vector<double>& alpha, const std::vector<double>& prices,
                       const std::vector<bool>& responds, const MarketConfig& cfg,
                       double step) {
  const double tol = tolerance();
  for (int i = 0; i < cfg.seller_count(); ++i) {
    if (!responds[i]) continue;
    const Offer oi = offer_for(cfg.sellers[i], alpha[i], 0.0, cfg.belief);
    for (int j = 0; j < cfg.seller_count(); ++j) {
      if (j == i) continue;
      const Offer oj = offer_for(cfg.sellers[j], alpha[j], prices[j], cfg.belief);
      if (std::abs(oi.slope - oj.slope) > tol && cfg.belief.bias > 0.0) continue;
      const double tie_price = oi.intercept - oj.intercept;
      if (tie_price > tol && tie_price >= prices[i] - tol && tie_price <= prices[i] + step + tol)
        return true;
    }
  }
  return false;
}

std::string format_prices(const std::vector<double>& p) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < p.size(); ++i) out << (i ? ", " : "") << p[i];
  out << ")";
  return out.str();
}

}  // namespace

double GridSpec::ceiling(const MarketConfig& cfg) const {
  if (price_ceiling) return *price_ceiling;
  // A disclosed rival below the prior raises what an undisclosed seller can charge,
  // so the headroom covers both tails of the quality range.
  double lo = cfg.belief.prior;
  for (const auto& s : cfg.sellers) lo = std::min(lo, s.quality);
  const double span = std::max(cfg.max_quality() - cfg.belief.prior, 0.0) + (cfg.belief.prior - lo);
  return std::max(price_step, span + 3.0 * cfg.belief.bias + 1.0);
}

double GridSpec::price_tolerance(double max_price) const {
  if (deviation_tolerance) return *deviation_tolerance;
  return 2.0 * price_step * std::max(1.0, max_price);
}

std::vector<double> GridSpec::alpha_levels() const {
  std::vector<double> out;
  const int n = static_cast<int>(std::floor(1.0 / alpha_step + 1e-9));
  for (int k = 0; k <= n; ++k) out.push_back(std::min(1.0, k * alpha_step));
  if (out.back() < 1.0 - tolerance()) out.push_back(1.0);
  out.back() = 1.0;
  return out;
}

void GridSpec::validate() const {
  if (!(price_step > 0.0)) throw ConfigError("price step must be positive");
  if (!(alpha_step > 0.0) || alpha_step > 1.0) throw ConfigError("alpha step must be in (0, 1]");
  if (price_ceiling && !(*price_ceiling > 0.0)) throw ConfigError("price ceiling must be positive");
  if (max_rounds < 1) throw ConfigError("max_rounds must be positive");
}

std::vector<double> expected_units(const MarketConfig& cfg, const StrategyProfile& profile) {
  if (profile.size() != cfg.sellers.size() || profile.prices.size() != cfg.sellers.size())
    throw ConfigError("profile does not match roster");
  if (capacity_binds(cfg)) {
    for (double a : profile.disclosure)
      if (!is_binary(a))
        throw ConfigError("binding capacities require binary disclosure levels");
    return sequential_units(cfg, profile);
  }
  thread_local std::vector<Offer> offers;
  offers.clear();
  for (int i = 0; i < cfg.seller_count(); ++i)
    offers.push_back(
        offer_for(cfg.sellers[i], profile.disclosure[i], profile.prices[i], cfg.belief));
  std::vector<double> units(offers.size());
  double exit = 0.0;
  choice_shares(offers, cfg.belief.bias, units, exit);
  for (double& u : units) u *= cfg.buyers;
  return units;
}

std::vector<double> expected_profits(const MarketConfig& cfg, const StrategyProfile& profile) {
  std::vector<double> w = expected_units(cfg, profile);
  for (int i = 0; i < cfg.seller_count(); ++i) w[i] = profit_of(cfg, profile, i, w[i]);
  return w;
}

Pair<double> repriced_profits(Pair<double> alpha, Pair<double> quality, Pair<double> cost,
                              const Belief& belief) {
  const PricingOutcome pricing = pricing_equilibrium(alpha, quality, belief);
  if (pricing.kind == PricingKind::NoPureEquilibrium)
    return bertrand_limit_profits(alpha[0], quality, cost);
  Offer offers[2];
  for (int i = 0; i < 2; ++i) {
    offers[i] = {alpha[i] * quality[i] + (1.0 - alpha[i]) * belief.prior - pricing.prices[i],
                 1.0 - alpha[i], 1.0};
  }
  double share[2];
  double exit = 0.0;
  choice_shares(offers, belief.bias, share, exit);
  return {pricing.prices[0] * share[0] - cost[0] * alpha[0],
          pricing.prices[1] * share[1] - cost[1] * alpha[1]};
}

double best_response_price(int seller_id, const StrategyProfile& profile, const MarketConfig& cfg,
                           const GridSpec& grid) {
  grid.validate();
  validate_profile(profile, cfg);
  StrategyProfile trial = profile;
  return best_response_index(cfg.index_of(seller_id), trial, cfg, grid) * grid.price_step;
}

PriceSolve price_equilibrium_numeric(const std::vector<double>& alpha, const MarketConfig& cfg,
                                     const GridSpec& grid,
                                     const std::vector<std::vector<double>>& extra_starts) {
  grid.validate();
  const int n = cfg.seller_count();
  if (static_cast<int>(alpha.size()) != n) throw ConfigError("alpha does not match roster");
  const int non_disclosers =
      static_cast<int>(std::count_if(alpha.begin(), alpha.end(), is_zero));
  std::vector<bool> responds(n, true);
  if (non_disclosers >= 2)
    for (int i = 0; i < n; ++i) responds[i] = !is_zero(alpha[i]);

  const double step = grid.price_step;
  const int count = price_count(grid, cfg);
  const auto snap = [&](double p) {
    return std::clamp(static_cast<int>(std::lround(p / step)), 0, count - 1);
  };

  std::vector<std::vector<int>> starts;
  starts.emplace_back(n, 0);
  starts.emplace_back(n, count - 1);
  if (n == 2) {
    const PricingOutcome guess = pricing_equilibrium({alpha[0], alpha[1]},
                                                     {cfg.sellers[0].quality,
                                                      cfg.sellers[1].quality},
                                                     cfg.belief);
    if (guess.kind == PricingKind::PurePrices)
      starts.push_back({snap(guess.prices[0]), snap(guess.prices[1])});
  }
  for (const auto& s : extra_starts) {
    if (static_cast<int>(s.size()) != n) throw ConfigError("start does not match roster");
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = snap(s[i]);
    starts.push_back(idx);
  }

  StrategyProfile trial{alpha, std::vector<double>(n, 0.0)};
  const auto to_prices = [&](const std::vector<int>& idx) {
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) p[i] = idx[i] * step;
    return p;
  };

  PriceSolve out;
  std::optional<std::vector<double>> artifact;
  std::vector<std::vector<double>> cycle;
  std::vector<double> last;
  int total_rounds = 0;
  for (auto state : starts) {
    for (int i = 0; i < n; ++i)
      if (!responds[i]) state[i] = 0;
    std::map<std::vector<int>, std::size_t> seen;
    std::vector<std::vector<int>> history{state};
    seen[state] = 0;
    for (int round = 1; round <= grid.max_rounds; ++round) {
      ++total_rounds;
      bool changed = false;
      for (int i = 0; i < n; ++i) {
        if (!responds[i]) continue;
        trial.prices = to_prices(state);
        const int k = best_response_index(i, trial, cfg, grid);
        if (k != state[i]) {
          state[i] = k;
          changed = true;
        }
      }
      if (!changed) {
        const auto prices = to_prices(state);
        if (!undercut_artifact(alpha, prices, responds, cfg, step)) {
          out.kind = PriceSolveKind::PurePrices;
          out.prices = prices;
          out.rounds = total_rounds;
          return out;
        }
        if (!artifact) artifact = prices;
        break;
      }
      const auto hit = seen.find(state);
      if (hit != seen.end()) {
        if (cycle.empty())
          for (std::size_t h = hit->second; h < history.size(); ++h)
            cycle.push_back(to_prices(history[h]));
        break;
      }
      seen[state] = history.size();
      history.push_back(state);
      if (round == grid.max_rounds) last = to_prices(state);
    }
  }
  out.rounds = total_rounds;
  if (artifact) {
    out.kind = PriceSolveKind::CycleDetected;
    out.prices = *artifact;
    out.detail = "grid fixed point " + format_prices(*artifact) +
                 " is an undercutting artifact; no pure price equilibrium";
  } else if (!cycle.empty()) {
    out.kind = PriceSolveKind::CycleDetected;
    out.cycle = cycle;
    out.detail = "best responses cycle through " + std::to_string(cycle.size()) + " states";
  } else {
    out.kind = PriceSolveKind::IterationCap;
    if (!last.empty()) out.cycle.push_back(last);
    out.detail = "no fixed point or cycle within " + std::to_string(grid.max_rounds) + " rounds";
  }
  return out;
}

namespace {

// Keeps the deviation whose gain exceeds its own threshold by the most.
struct WorstTracker {
  Verification& v;
  double margin = -INFINITY;

  void offer(const Deviation& d, double threshold) {
    if (d.gain > threshold) v.verified = false;
    if (d.gain - threshold > margin) {
      margin = d.gain - threshold;
      v.worst = d;
    }
    if (d.disclosure_change && (!v.worst_disclosure || d.gain > v.worst_disclosure->gain))
      v.worst_disclosure = d;
  }
};

void scan_prices(const StrategyProfile& profile, const MarketConfig& cfg, const GridSpec& grid,
                 double threshold, WorstTracker& track) {
  const std::vector<double> base = expected_profits(cfg, profile);
  const int count = price_count(grid, cfg);
  StrategyProfile trial = profile;
  for (int i = 0; i < cfg.seller_count(); ++i) {
    double best = -INFINITY;
    double best_price = profile.prices[i];
    for (int k = 0; k < count; ++k) {
      trial.prices[i] = k * grid.price_step;
      const double w = expected_profits(cfg, trial)[i];
      if (w > best) {
        best = w;
        best_price = trial.prices[i];
      }
    }
    trial.prices[i] = profile.prices[i];
    track.offer({cfg.sellers[i].id, profile.disclosure[i], best_price, best - base[i], false},
                threshold);
  }
}

}  // namespace

Verification verify_equilibrium(const StrategyProfile& profile, const MarketConfig& cfg,
                                const GridSpec& grid) {
  grid.validate();
  validate_profile(profile, cfg);
  Verification v;
  const double max_price = *std::max_element(profile.prices.begin(), profile.prices.end());
  v.tolerance = grid.price_tolerance(max_price);
  WorstTracker track{v};
  const int n = cfg.seller_count();

  if (n == 2 && cfg.buyers == 1) {
    const Pair<double> alpha{profile.disclosure[0], profile.disclosure[1]};
    const Pair<double> q{cfg.sellers[0].quality, cfg.sellers[1].quality};
    const Pair<double> c{cfg.sellers[0].cost, cfg.sellers[1].cost};
    const Pair<double> base = repriced_profits(alpha, q, c, cfg.belief);
    const auto levels = grid.alpha_levels();
    for (int i = 0; i < 2; ++i) {
      for (double a : levels) {
        if (std::abs(a - alpha[i]) <= tolerance()) continue;
        Pair<double> dev = alpha;
        dev[i] = a;
        const double gain = repriced_profits(dev, q, c, cfg.belief)[i] - base[i];
        const PricingOutcome pr = pricing_equilibrium(dev, q, cfg.belief);
        track.offer({cfg.sellers[i].id, a, pr.prices[i], gain, true}, tolerance());
      }
    }
    scan_prices(profile, cfg, grid, v.tolerance, track);
    return v;
  }

  for (double a : profile.disclosure)
    if (!is_binary(a)) throw ConfigError("multi-seller verification needs binary disclosure");
  scan_prices(profile, cfg, grid, v.tolerance, track);
  const std::vector<double> base = expected_profits(cfg, profile);
  for (int i = 0; i < n; ++i) {
    std::vector<double> alpha = profile.disclosure;
    alpha[i] = is_one(alpha[i]) ? 0.0 : 1.0;
    const PriceSolve solve = price_equilibrium_numeric(alpha, cfg, grid, {profile.prices});
    double payoff = INFINITY;
    double price = 0.0;
    std::vector<std::vector<double>> outcomes = solve.cycle;
    if (!solve.prices.empty()) outcomes = {solve.prices};
    for (const auto& prices : outcomes) {
      const double w = expected_profits(cfg, {alpha, prices})[i];
      if (w < payoff) {
        payoff = w;
        price = prices[i];
      }
    }
    if (outcomes.empty()) continue;
    track.offer({cfg.sellers[i].id, alpha[i], price, payoff - base[i], true}, v.tolerance);
  }
  return v;
}

PatternDeriver::PatternDeriver(Pair<double> quality, const Belief& belief, const GridSpec& grid)
    : levels_(grid.alpha_levels()) {
  const std::size_t n = levels_.size();
  gross1_.resize(n * n);
  gross2_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Pair<double> w = repriced_profits({levels_[a], levels_[b]}, quality, {0.0, 0.0}, belief);
      gross1_[a * n + b] = w[0];
      gross2_[a * n + b] = w[1];
    }
  }
}

PatternDeriver::Result PatternDeriver::derive(Pair<double> cost) const {
  const std::size_t n = levels_.size();
  const double tol = tolerance();
  // Lowest level within tolerance of the best payoff.
  const auto pick = [&](auto&& payoff) {
    double best = -INFINITY;
    for (std::size_t a = 0; a < n; ++a) best = std::max(best, payoff(a));
    for (std::size_t a = 0; a < n; ++a)
      if (payoff(a) >= best - tol) return a;
    return n - 1;
  };
  std::vector<std::size_t> br1(n), br2(n);
  for (std::size_t b = 0; b < n; ++b)
    br1[b] = pick([&](std::size_t a) { return gross1_[a * n + b] - cost[0] * levels_[a]; });
  for (std::size_t a = 0; a < n; ++a)
    br2[a] = pick([&](std::size_t b) { return gross2_[a * n + b] - cost[1] * levels_[b]; });

  Result out;
  bool c10 = false, c01 = false, c00 = false, c11 = false;
  for (std::size_t b = 0; b < n; ++b) {
    const std::size_t a = br1[b];
    if (br2[a] != b) continue;
    const Pair<double> eq{levels_[a], levels_[b]};
    const bool corner = (a == 0 || a == n - 1) && (b == 0 || b == n - 1);
    if (!corner) {
      out.interior_equilibria.push_back(eq);
      continue;
    }
    out.corner_equilibria.push_back(eq);
    c10 |= a == n - 1 && b == 0;
    c01 |= a == 0 && b == n - 1;
    c00 |= a == 0 && b == 0;
    c11 |= a == n - 1 && b == n - 1;
  }
  if (!c11) {
    if (c10 && !c01 && !c00) out.label = PatternLabel::I;
    if (c10 && c01 && !c00) out.label = PatternLabel::II;
    if (!c10 && c01 && !c00) out.label = PatternLabel::III;
    if (!c10 && !c01 && c00) out.label = PatternLabel::IV;
  }
  return out;
}

PatternDerivation derive_pattern(Pair<double> quality, Pair<double> cost, const Belief& belief,
                                 const GridSpec& grid) {
  return PatternDeriver(quality, belief, grid).derive(cost);
}

std::string describe(const PatternDerivation& d) {
  std::ostringstream out;
  const auto list = [&](const std::vector<Pair<double>>& v) {
    out << "[";
    for (std::size_t i = 0; i < v.size(); ++i)
      out << (i ? " " : "") << "(" << v[i][0] << "," << v[i][1] << ")";
    out << "]";
  };
  out << "corners=";
  list(d.corner_equilibria);
  out << " interior=";
  list(d.interior_equilibria);
  return out.str();
}

std::string label_or_anomaly(const std::optional<PatternLabel>& label) {
  return label ? to_string(*label) : "anomaly";
}

ThresholdMap derive_pattern_thresholds(Pair<double> quality, const Belief& belief,
                                       Pair<double> c_range, int resolution,
                                       const GridSpec& grid) {
  if (resolution < 2) throw ConfigError("resolution must be at least 2");
  if (!(c_range[1] > c_range[0])) throw ConfigError("empty cost range");
  const PatternDeriver deriver(quality, belief, grid);
  const auto label_at = [&](double c1, double c2) {
    return label_or_anomaly(deriver.derive({c1, c2}).label);
  };
  ThresholdMap map;
  const double h = (c_range[1] - c_range[0]) / (resolution - 1);
  for (int i = 0; i < resolution; ++i) map.c1_values.push_back(c_range[0] + i * h);
  map.c2_values = map.c1_values;
  map.labels.assign(resolution, std::vector<std::string>(resolution));
  for (int i = 0; i < resolution; ++i)
    for (int j = 0; j < resolution; ++j)
      map.labels[i][j] = label_at(map.c1_values[i], map.c2_values[j]);

  const auto bisect = [&](double lo, double hi, auto&& at) {
    const std::string low_label = at(lo);
    for (int it = 0; it < 40; ++it) {
      const double mid = 0.5 * (lo + hi);
      (at(mid) == low_label ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  for (int j = 0; j < resolution; ++j) {
    const double c2 = map.c2_values[j];
    for (int i = 0; i + 1 < resolution; ++i) {
      if (map.labels[i][j] == map.labels[i + 1][j]) continue;
      // Labels right at a threshold can be degenerate ties; report the grid neighbours.
      const double c1 = bisect(map.c1_values[i], map.c1_values[i + 1],
                               [&](double x) { return label_at(x, c2); });
      map.points.push_back({c1, c2, true, map.labels[i][j], map.labels[i + 1][j]});
    }
  }
  for (int i = 0; i < resolution; ++i) {
    const double c1 = map.c1_values[i];
    for (int j = 0; j + 1 < resolution; ++j) {
      if (map.labels[i][j] == map.labels[i][j + 1]) continue;
      const double c2 = bisect(map.c2_values[j], map.c2_values[j + 1],
                               [&](double x) { return label_at(c1, x); });
      map.points.push_back({c1, c2, false, map.labels[i][j], map.labels[i][j + 1]});
    }
  }
  return map;
}

}  // namespace infodisc::oracle
