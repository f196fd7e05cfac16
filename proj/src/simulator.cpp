#include "infodisc/simulator.hpp"

#include <cmath>
#include <ostream>

namespace infodisc {

namespace {

constexpr std::uint64_t kBiasStream = 0;
constexpr std::uint64_t kTieStream = 1;

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Welford's streaming mean and variance.
struct RunningStat {
  long n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }
  double se() const { return n > 1 ? std::sqrt(m2 / (n - 1) / n) : 0.0; }
};

struct Market {
  const MarketConfig& cfg;
  const StrategyProfile& profile;
  CounterRng rng;
  std::vector<int> remaining;
  std::vector<int> sold;
  std::vector<int> best;

  // Runs replication `r`, with the given biases when `biases` is set; returns
  // the number of exits.
  int run(std::uint64_t r, std::vector<BuyerOutcome>* record,
          const std::vector<double>* biases = nullptr) {
    const int n = cfg.seller_count();
    const double tol = tolerance();
    for (int i = 0; i < n; ++i) {
      const auto& cap = cfg.sellers[i].capacity;
      remaining[i] = cap.is_unlimited() ? cfg.buyers : cap.units();
      sold[i] = 0;
    }
    int exits = 0;
    for (int k = 0; k < cfg.buyers; ++k) {
      const double eps = biases ? (*biases)[k]
                                : cfg.belief.bias * (2.0 * rng.uniform(r, k, kBiasStream) - 1.0);
      double top = -INFINITY;
      best.clear();
      for (int i = 0; i < n; ++i) {
        if (remaining[i] == 0) continue;
        const double u = buyer_payoff(profile.disclosure[i], cfg.sellers[i].quality,
                                      profile.prices[i], eps, cfg.belief);
        if (u > top + tol) {
          top = u;
          best.assign(1, i);
        } else if (u >= top - tol) {
          best.push_back(i);
        }
      }
      BuyerOutcome out;
      out.bias = eps;
      if (best.empty() || top < -tol) {
        ++exits;
        out.kind = ChoiceKind::Exit;
      } else {
        const auto pick = static_cast<std::size_t>(rng.uniform(r, k, kTieStream) * best.size());
        const int i = best[std::min(pick, best.size() - 1)];
        --remaining[i];
        ++sold[i];
        out.payoff = top;
        out.kind = best.size() > 1 ? ChoiceKind::Tie : ChoiceKind::Seller;
        if (best.size() > 1)
          for (int b : best) out.sellers.push_back(cfg.sellers[b].id);
        else
          out.sellers.push_back(cfg.sellers[i].id);
      }
      if (record) record->push_back(out);
    }
    return exits;
  }
};

void check_inputs(const MarketConfig& cfg, const StrategyProfile& profile, int draws) {
  validate_config(cfg);
  validate_profile(profile, cfg);
  if (draws < 1) throw ConfigError("draws must be at least 1");
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t replication, std::uint64_t buyer,
                               std::uint64_t stream) const {
  std::uint64_t h = mix(seed_);
  h = mix(h ^ replication);
  h = mix(h ^ buyer);
  return mix(h ^ stream);
}

double CounterRng::uniform(std::uint64_t replication, std::uint64_t buyer,
                           std::uint64_t stream) const {
  return static_cast<double>(bits(replication, buyer, stream) >> 11) * 0x1.0p-53;
}

SimRun simulate(const MarketConfig& cfg, const StrategyProfile& profile, std::uint64_t seed,
                int draws, const SimOptions& options) {
  check_inputs(cfg, profile, draws);
  const int n = cfg.seller_count();
  Market market{cfg, profile, CounterRng(seed), std::vector<int>(n), std::vector<int>(n), {}};
  std::vector<RunningStat> units(n), profit(n);
  RunningStat exits;
  SimRun run;
  run.seed = seed;
  run.draws = draws;
  for (int r = 0; r < draws; ++r) {
    std::vector<BuyerOutcome>* record = nullptr;
    if (options.record_buyers) record = &run.buyers.emplace_back();
    exits.add(market.run(r, record));
    for (int i = 0; i < n; ++i) {
      const double w = profile.prices[i] * market.sold[i] -
                       cfg.sellers[i].cost * profile.disclosure[i];
      units[i].add(market.sold[i]);
      profit[i].add(w);
      if (options.record_rows) run.rows.push_back({r, cfg.sellers[i].id, market.sold[i], w});
    }
  }
  for (int i = 0; i < n; ++i)
    run.sellers.push_back({cfg.sellers[i].id, units[i].mean, units[i].se(), profit[i].mean,
                           profit[i].se()});
  run.mean_exits = exits.mean;
  return run;
}

std::vector<int> allocate(const MarketConfig& cfg, const StrategyProfile& profile,
                          const std::vector<double>& biases, std::uint64_t seed) {
  check_inputs(cfg, profile, 1);
  if (static_cast<int>(biases.size()) != cfg.buyers)
    throw ConfigError("need one bias per buyer");
  for (double e : biases)
    if (std::abs(e) > cfg.belief.bias + tolerance()) throw ConfigError("bias outside the support");
  const int n = cfg.seller_count();
  Market market{cfg, profile, CounterRng(seed), std::vector<int>(n), std::vector<int>(n), {}};
  market.run(0, nullptr, &biases);
  return market.sold;
}

WinEstimate estimate_win_prob(const MarketConfig& cfg, const StrategyProfile& profile,
                              std::uint64_t seed, int draws) {
  check_inputs(cfg, profile, draws);
  if (draws < 100) throw ConfigError("estimate_win_prob needs at least 100 draws");
  const int n = cfg.seller_count();
  Market market{cfg, profile, CounterRng(seed), std::vector<int>(n), std::vector<int>(n), {}};
  std::vector<RunningStat> chosen(n);
  RunningStat exit;
  const double k = cfg.buyers;
  for (int r = 0; r < draws; ++r) {
    exit.add(market.run(r, nullptr) / k);
    for (int i = 0; i < n; ++i) chosen[i].add(market.sold[i] / k);
  }
  WinEstimate out;
  out.draws = draws;
  for (int i = 0; i < n; ++i) {
    out.frequency.push_back(chosen[i].mean);
    out.se.push_back(chosen[i].se());
  }
  out.exit_frequency = exit.mean;
  out.exit_se = exit.se();
  return out;
}

void write_sim_csv(std::ostream& out, const SimRun& run) {
  out << "replication,seller_id,units_sold,profit\n";
  const auto old = out.precision(17);
  for (const auto& row : run.rows)
    out << row.replication << ',' << row.seller_id << ',' << row.units_sold << ',' << row.profit
        << '\n';
  out.precision(old);
}

nlohmann::json sim_summary_json(const SimRun& run) {
  nlohmann::json sellers = nlohmann::json::array();
  for (const auto& s : run.sellers)
    sellers.push_back({{"id", s.id},
                       {"mean_units", s.mean_units},
                       {"se_units", s.se_units},
                       {"mean_profit", s.mean_profit},
                       {"se_profit", s.se_profit}});
  return {{"seed", run.seed}, {"draws", run.draws}, {"mean_exits", run.mean_exits},
          {"sellers", sellers}};
}

}  // namespace infodisc
