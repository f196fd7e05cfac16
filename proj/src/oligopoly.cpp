#include "infodisc/oligopoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "infodisc/duopoly.hpp"

namespace infodisc {

namespace {

void require_closed_form_domain(const Belief& belief, const char* op) {
  if (belief.bias <= 0.0) throw AssumptionError(std::string(op) + ": undefined for eps0 = 0");
  if (!belief.within_assumption())
    throw AssumptionError(std::string(op) + ": requires eps0 <= q0/3");
}

struct Candidate {
  int index = 0;
  double quality = 0.0;
  double value = 0.0;  // Q - c: the quality a rival must match to keep it out
  int slots = 0;
};

struct Found {
  std::vector<int> members;  // roster indices
  bool argmin_tie = false;
  bool argmin_by_quality = false;  // prices were too costly to solve
};

// Depth-first search over eligible sellers ordered by Q - c. A set is an
// equilibrium when every member's quality matches every outsider's Q - c,
// and either the set just covers demand (dropping its least attractive member
// would not) or it holds every eligible seller without covering demand.
class Enumerator {
 public:
  Enumerator(const MarketConfig& cfg, const EnumerationOptions& opts) : cfg_(cfg), opts_(opts) {
    for (int i = 0; i < cfg.seller_count(); ++i) {
      const auto& s = cfg.sellers[i];
      if (eligible(s.quality, s.cost, cfg.belief))
        eligible_.push_back({i, s.quality, s.quality - s.cost, s.capacity.slots(cfg.buyers)});
      else
        outside_ = std::max(outside_, s.quality - s.cost);
    }
    std::stable_sort(eligible_.begin(), eligible_.end(),
                     [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  }

  std::vector<Found> run() {
    if (eligible_.empty()) return {Found{}};
    std::vector<int> members;
    search(0, outside_, INFINITY, 0, 0, members);
    return found_;
  }

  bool truncated() const { return truncated_; }

 private:
  void search(std::size_t k, double bound, double min_quality, int sum, int max_slots,
              std::vector<int>& members) {
    if (truncated_) return;
    if (found_.size() >= opts_.max_sets || ++visits_ > 50'000'000) {
      truncated_ = true;
      return;
    }
    const double tol = tolerance();
    if (k == eligible_.size()) {
      accept(members, sum);
      return;
    }
    const Candidate& e = eligible_[k];
    if (e.quality >= bound - tol) {
      const int s2 = sum + e.slots;
      const int m2 = std::max(max_slots, e.slots);
      if (s2 - m2 < cfg_.buyers) {
        members.push_back(static_cast<int>(k));
        search(k + 1, bound, std::min(min_quality, e.quality), s2, m2, members);
        members.pop_back();
      }
    }
    const double excluded = std::max(bound, e.value);
    if (min_quality >= excluded - tol) search(k + 1, excluded, min_quality, sum, max_slots, members);
  }

  void accept(const std::vector<int>& members, int sum) {
    if (members.empty()) return;
    Found f;
    for (int k : members) f.members.push_back(eligible_[k].index);
    if (sum < cfg_.buyers) {
      if (members.size() == eligible_.size()) found_.push_back(f);
      return;
    }
    std::vector<bool> ok;
    for (int k : members) ok.push_back(sum - eligible_[k].slots < cfg_.buyers);
    const auto n_ok = std::count(ok.begin(), ok.end(), true);
    if (n_ok == 0) return;
    if (n_ok == static_cast<long>(ok.size())) {
      found_.push_back(f);
      return;
    }
    // Whether demand is still covered without the least attractive member
    // depends on which member that is.
    bool numeric = false;
    const std::vector<int> worst = least_attractive(f.members, numeric);
    f.argmin_tie = worst.size() > 1;
    f.argmin_by_quality = !numeric;
    for (int idx : worst) {
      const auto pos = std::find(f.members.begin(), f.members.end(), idx) - f.members.begin();
      if (ok[pos]) {
        found_.push_back(f);
        return;
      }
    }
  }

  // Members offering buyers the lowest Q - p; prices from the numeric solver
  // when the market is small enough, otherwise ranked by quality alone.
  std::vector<int> least_attractive(const std::vector<int>& members, bool& numeric) {
    std::vector<double> score(cfg_.seller_count());
    for (int i : members) score[i] = cfg_.sellers[i].quality;
    numeric = cfg_.seller_count() <= opts_.numeric_price_limit;
    if (numeric) {
      std::vector<double> alpha(cfg_.seller_count(), 0.0);
      for (int i : members) alpha[i] = 1.0;
      const auto solve = oracle::price_equilibrium_numeric(alpha, cfg_, opts_.grid);
      const auto& prices = !solve.prices.empty() ? solve.prices : solve.cycle.front();
      for (int i : members) score[i] -= prices[i];
    }
    double low = INFINITY;
    for (int i : members) low = std::min(low, score[i]);
    std::vector<int> out;
    for (int i : members)
      if (score[i] <= low + tolerance()) out.push_back(i);
    return out;
  }

  const MarketConfig& cfg_;
  const EnumerationOptions& opts_;
  std::vector<Candidate> eligible_;
  double outside_ = -INFINITY;
  std::vector<Found> found_;
  bool truncated_ = false;
  long visits_ = 0;
};

Equilibrium build(const MarketConfig& cfg, const Found& f, Scenario scenario,
                  const EnumerationOptions& opts) {
  const int n = cfg.seller_count();
  Equilibrium eq;
  for (int i : f.members) eq.disclosers.push_back(cfg.sellers[i].id);
  std::sort(eq.disclosers.begin(), eq.disclosers.end());
  eq.argmin_tie = f.argmin_tie;
  int sum = 0;
  for (int i : f.members) sum += cfg.sellers[i].capacity.slots(cfg.buyers);

  if (f.members.empty()) {
    eq.label = "no-disclosure";
    eq.prices.assign(n, 0.0);
    eq.expected_profits.assign(n, 0.0);
    return eq;
  }
  if (scenario == Scenario::Unlimited) {
    eq.label = "single-discloser";
    eq.prices.assign(n, 0.0);
    eq.expected_profits.assign(n, 0.0);
    const int i = f.members.front();
    const MonopolyPrice m = monopoly_disclosure_price(cfg.sellers[i].quality, cfg.belief);
    eq.prices[i] = m.price;
    eq.expected_profits[i] = m.gross_profit - cfg.sellers[i].cost;
    return eq;
  }
  eq.label = sum >= cfg.buyers ? "covers-demand" : "all-eligible";
  if (f.argmin_by_quality) eq.label += ",argmin-by-quality";
  if (opts.solve_prices && n <= opts.numeric_price_limit) {
    std::vector<double> alpha(n, 0.0);
    for (int i : f.members) alpha[i] = 1.0;
    const auto solve = oracle::price_equilibrium_numeric(alpha, cfg, opts.grid);
    // Capacity-bound disclosers can undercut each other forever; the prices
    // are then one state of the cycle.
    if (solve.kind != oracle::PriceSolveKind::PurePrices) eq.label += ",price-cycle";
    eq.prices = !solve.prices.empty() ? solve.prices : solve.cycle.front();
    eq.expected_profits = oracle::expected_profits(cfg, {alpha, eq.prices});
    eq.numeric_prices = true;
  }
  return eq;
}

EquilibriumReport enumerate(const MarketConfig& cfg, Scenario scenario,
                            const EnumerationOptions& opts) {
  require_closed_form_domain(cfg.belief, "equilibria");
  Enumerator e(cfg, opts);
  EquilibriumReport report;
  report.scenario = scenario;
  for (const Found& f : e.run()) report.equilibria.push_back(build(cfg, f, scenario, opts));
  report.truncated = e.truncated();
  report.multiple = report.equilibria.size() > 1;
  return report;
}

long total_supply(const MarketConfig& cfg) {
  long total = 0;
  for (const auto& s : cfg.sellers) total += s.capacity.units();
  return total;
}

}  // namespace

bool eligible(double quality, double cost, const Belief& belief) {
  require_closed_form_domain(belief, "eligible");
  const double x = quality - belief.prior;
  const double e = belief.bias;
  const double tol = tolerance();
  if (x > e && x < 3.0 * e) return cost <= (x + e) * (x + e) / (8.0 * e) + tol;
  if (x >= 3.0 * e) return cost <= x - e + tol;
  return false;
}

MonopolyPrice monopoly_disclosure_price(double quality, const Belief& belief) {
  require_closed_form_domain(belief, "monopoly_disclosure_price");
  const double x = quality - belief.prior;
  const double e = belief.bias;
  if (x + e <= 0.0) return {0.0, 0.0};
  if (x < 3.0 * e) {
    const double p = (x + e) / 2.0;
    return {p, (x + e) * (x + e) / (8.0 * e)};
  }
  return {x - e, x - e};
}

EquilibriumReport equilibria_unlimited(const MarketConfig& cfg, const EnumerationOptions& opts) {
  for (const auto& s : cfg.sellers)
    if (!s.capacity.is_unlimited())
      throw ConfigError("unlimited scenario needs every capacity unlimited");
  return enumerate(cfg, Scenario::Unlimited, opts);
}

EquilibriumReport equilibria_single(const MarketConfig& cfg, const EnumerationOptions& opts) {
  for (const auto& s : cfg.sellers)
    if (s.capacity.is_unlimited() || s.capacity.units() != 1)
      throw ConfigError("single scenario needs every capacity equal to 1");
  if (cfg.seller_count() <= cfg.buyers)
    throw ConfigError("single scenario needs more sellers than buyers");
  return enumerate(cfg, Scenario::Single, opts);
}

EquilibriumReport equilibria_limited(const MarketConfig& cfg, const EnumerationOptions& opts) {
  for (const auto& s : cfg.sellers)
    if (s.capacity.is_unlimited())
      throw ConfigError("limited scenario needs finite capacities");
  if (total_supply(cfg) <= cfg.buyers)
    throw ConfigError("limited scenario needs total capacity above the number of buyers");
  return enumerate(cfg, Scenario::Limited, opts);
}

EquilibriumReport equilibria(const MarketConfig& cfg, Scenario scenario,
                             const EnumerationOptions& opts) {
  switch (scenario) {
    case Scenario::Unlimited: return equilibria_unlimited(cfg, opts);
    case Scenario::Single: return equilibria_single(cfg, opts);
    case Scenario::Limited: return equilibria_limited(cfg, opts);
    case Scenario::Duopoly: break;
  }
  if (cfg.seller_count() != 2 || cfg.buyers != 1)
    throw ConfigError("duopoly scenario needs exactly 2 sellers and 1 buyer");
  const Pair<double> q{cfg.sellers[0].quality, cfg.sellers[1].quality};
  const Pair<double> c{cfg.sellers[0].cost, cfg.sellers[1].cost};
  const auto derived = oracle::derive_pattern(q, c, cfg.belief, opts.grid);
  EquilibriumReport report;
  report.scenario = Scenario::Duopoly;
  for (const auto& alpha : derived.corner_equilibria) {
    Equilibrium eq;
    for (int i = 0; i < 2; ++i)
      if (alpha[i] > 0.5) eq.disclosers.push_back(cfg.sellers[i].id);
    std::sort(eq.disclosers.begin(), eq.disclosers.end());
    const PricingOutcome pr = pricing_equilibrium(alpha, q, cfg.belief);
    eq.prices = {pr.prices[0], pr.prices[1]};
    const Pair<double> w = stage1_expected_profits(alpha, q, c, cfg.belief);
    eq.expected_profits = {w[0], w[1]};
    eq.label = "pattern " + oracle::label_or_anomaly(derived.label);
    report.equilibria.push_back(eq);
  }
  report.multiple = report.equilibria.size() > 1;
  return report;
}

bool member_of_some_equilibrium(const MarketConfig& population, double quality, double cost,
                                Capacity capacity) {
  const Belief& b = population.belief;
  if (!eligible(quality, cost, b)) return false;
  const double tol = tolerance();
  const int k = population.buyers;
  const int slots = capacity.slots(k);
  const int need = (k + slots - 1) / slots;

  std::vector<bool> elig(population.sellers.size());
  std::vector<double> levels{quality};
  int eligible_count = 1;
  double min_eligible_q = quality;
  double max_outside = -INFINITY;
  for (std::size_t j = 0; j < population.sellers.size(); ++j) {
    const auto& s = population.sellers[j];
    elig[j] = eligible(s.quality, s.cost, b);
    if (elig[j]) {
      ++eligible_count;
      min_eligible_q = std::min(min_eligible_q, s.quality);
      if (s.quality < quality) levels.push_back(s.quality);
    } else {
      max_outside = std::max(max_outside, s.quality - s.cost);
    }
  }
  // Every eligible seller discloses and demand is still not covered.
  if (static_cast<long>(eligible_count) * slots < k && min_eligible_q >= max_outside - tol)
    return true;

  // Otherwise look for a set of exactly `need` members whose lowest quality L
  // keeps out every outsider: all sellers with Q - c > L must be inside.
  std::sort(levels.begin(), levels.end(), std::greater<>());
  for (double level : levels) {
    int forced = 1;  // the probe
    int pool = 1;
    bool blocked = false;
    for (std::size_t j = 0; j < population.sellers.size(); ++j) {
      const auto& s = population.sellers[j];
      if (s.quality - s.cost > level + tol) {
        if (!elig[j]) blocked = true;
        ++forced;
      }
      if (elig[j] && s.quality >= level - tol) ++pool;
    }
    if (blocked || forced > need) return false;
    if (pool >= need) return true;
  }
  return false;
}

OrderingReport disclosure_count_ordering(const MarketConfig& base, int omega,
                                         const EnumerationOptions& options) {
  EnumerationOptions opts = options;
  opts.solve_prices = false;
  const auto with_capacity = [&](Capacity cap) {
    MarketConfig cfg = base;
    for (auto& s : cfg.sellers) s.capacity = cap;
    return cfg;
  };
  const auto range = [](const EquilibriumReport& r) {
    CountRange out{SIZE_MAX, 0};
    for (const auto& e : r.equilibria) {
      out.min = std::min(out.min, e.disclosers.size());
      out.max = std::max(out.max, e.disclosers.size());
    }
    if (r.equilibria.empty()) out.min = 0;
    return out;
  };
  const auto u = equilibria_unlimited(with_capacity(Capacity::unlimited()), opts);
  const auto l = equilibria_limited(with_capacity(Capacity::of(omega)), opts);
  const auto s = equilibria_single(with_capacity(Capacity::of(1)), opts);
  OrderingReport out;
  out.unlimited = range(u);
  out.limited = range(l);
  out.single = range(s);
  out.truncated = u.truncated || l.truncated || s.truncated;
  out.holds = out.unlimited.max <= out.limited.max && out.limited.max <= out.single.max;
  out.holds_for_all_triples =
      out.unlimited.max <= out.limited.min && out.limited.max <= out.single.min;
  return out;
}

}  // namespace infodisc
