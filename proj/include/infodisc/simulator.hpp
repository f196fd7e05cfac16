#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "infodisc/market.hpp"
#include "json.hpp"

namespace infodisc {

/// Counter-based generator: every draw is a pure function of its coordinates,
/// so replications can run in any order and still reproduce bit for bit.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t replication, std::uint64_t buyer, std::uint64_t stream) const;
  /// Uniform on [0, 1).
  double uniform(std::uint64_t replication, std::uint64_t buyer, std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
};

struct SimRow {
  int replication = 0;
  int seller_id = 0;
  int units_sold = 0;
  double profit = 0.0;
};

struct SellerStats {
  int id = 0;
  double mean_units = 0.0;
  double se_units = 0.0;
  double mean_profit = 0.0;
  double se_profit = 0.0;
};

struct SimOptions {
  bool record_rows = false;
  bool record_buyers = false;
};

struct SimRun {
  std::uint64_t seed = 0;
  int draws = 0;
  std::vector<SellerStats> sellers;
  double mean_exits = 0.0;
  std::vector<SimRow> rows;                        // when record_rows
  std::vector<std::vector<BuyerOutcome>> buyers;   // when record_buyers, per replication
};

/// Replays the market `draws` times: K buyers arrive in order, each draws its
/// bias, and buys from the best seller with spare capacity (uniform among
/// ties, and a zero payoff still buys) or exits. A replication's profit is
/// price times units sold minus c alpha, charged whether or not anything sells.
SimRun simulate(const MarketConfig& cfg, const StrategyProfile& profile, std::uint64_t seed,
                int draws, const SimOptions& options = {});

/// Units sold per seller in one replication whose buyers, in arrival order,
/// have the given biases. `seed` only drives tie-breaking.
std::vector<int> allocate(const MarketConfig& cfg, const StrategyProfile& profile,
                          const std::vector<double>& biases, std::uint64_t seed = 0);

struct WinEstimate {
  std::vector<double> frequency;  // share of buyers choosing each seller
  std::vector<double> se;
  double exit_frequency = 0.0;
  double exit_se = 0.0;
  int draws = 0;
};

/// Selection frequencies over all buyers of `draws` replications. Needs at
/// least 100 draws.
WinEstimate estimate_win_prob(const MarketConfig& cfg, const StrategyProfile& profile,
                              std::uint64_t seed, int draws);

/// CSV with header replication,seller_id,units_sold,profit.
void write_sim_csv(std::ostream& out, const SimRun& run);
nlohmann::json sim_summary_json(const SimRun& run);

}  // namespace infodisc
