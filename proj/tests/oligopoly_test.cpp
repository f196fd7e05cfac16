#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "infodisc/oligopoly.hpp"
#include "infodisc/oracle.hpp"

namespace infodisc {
namespace {

const Belief kBelief{10.0, 2.0};
// Discloser sets only; prices are exercised by the deviation test.
const EnumerationOptions kSetsOnly{.solve_prices = false};

MarketConfig Roster(std::vector<std::pair<double, double>> qc, int buyers, Capacity cap,
                    Belief belief = kBelief) {
  MarketConfig cfg;
  cfg.belief = belief;
  cfg.buyers = buyers;
  int id = 1;
  for (auto [q, c] : qc) cfg.sellers.push_back({id++, q, c, cap});
  return cfg;
}

std::set<std::vector<int>> Families(const EquilibriumReport& r) {
  std::set<std::vector<int>> out;
  for (const auto& e : r.equilibria) out.insert(e.disclosers);
  return out;
}

StrategyProfile ProfileOf(const MarketConfig& cfg, const Equilibrium& eq) {
  StrategyProfile p;
  for (const auto& s : cfg.sellers)
    p.disclosure.push_back(
        std::count(eq.disclosers.begin(), eq.disclosers.end(), s.id) ? 1.0 : 0.0);
  p.prices = eq.prices;
  return p;
}

TEST(EligibleTest, Examples) {
  EXPECT_TRUE(eligible(14, 2, kBelief));
  EXPECT_FALSE(eligible(14, 2.5, kBelief));
  EXPECT_TRUE(eligible(20, 7, kBelief));
  EXPECT_FALSE(eligible(12, 0, kBelief));
  EXPECT_FALSE(eligible(5, 0, kBelief));
  EXPECT_THROW(eligible(14, 1, {10, 0}), AssumptionError);
  EXPECT_THROW(eligible(14, 1, {10, 5}), AssumptionError);
}

// Revenue of a sole discloser against a zero-priced non-discloser, from the
// exact choice integration, maximized over a 1e-4 price grid.
MonopolyPrice GridMonopoly(double q) {
  MarketConfig cfg = Roster({{q, 0}, {q, 0}}, 1, Capacity::unlimited());
  MonopolyPrice best;
  for (int k = 0; k * 1e-4 <= q; ++k) {
    const double p = k * 1e-4;
    const double w = oracle::expected_profits(cfg, {{1, 0}, {p, 0}})[0];
    if (w > best.gross_profit) best = {p, w};
  }
  return best;
}

TEST(MonopolyPriceTest, MatchesGridOracle) {
  for (double q : {14.0, 16.0, 13.0, 19.5}) {
    const MonopolyPrice exact = monopoly_disclosure_price(q, kBelief);
    const MonopolyPrice grid = GridMonopoly(q);
    EXPECT_NEAR(exact.price, grid.price, 2e-4) << q;
    EXPECT_NEAR(exact.gross_profit, grid.gross_profit, 1e-6) << q;
  }
  EXPECT_DOUBLE_EQ(monopoly_disclosure_price(14, kBelief).price, 3.0);
  EXPECT_DOUBLE_EQ(monopoly_disclosure_price(14, kBelief).gross_profit, 2.25);
  EXPECT_DOUBLE_EQ(monopoly_disclosure_price(16, kBelief).price, 4.0);
  EXPECT_DOUBLE_EQ(monopoly_disclosure_price(16, kBelief).gross_profit, 4.0);
  EXPECT_DOUBLE_EQ(monopoly_disclosure_price(12, kBelief).gross_profit, 1.0);
}

TEST(MonopolyPriceTest, FrontierIsZeroNetProfit) {
  for (int i = 1; i < 100; ++i) {
    const double q = 12.0 + 8.0 * i / 100.0;
    const double x = q - 10.0;
    const double c = x < 6.0 ? (x + 2) * (x + 2) / 16.0 : x - 2.0;
    EXPECT_NEAR(monopoly_disclosure_price(q, kBelief).gross_profit - c, 0.0, 1e-9);
    EXPECT_TRUE(eligible(q, c, kBelief));
    EXPECT_FALSE(eligible(q, c + 1e-6, kBelief));
  }
}

TEST(EquilibriaUnlimitedTest, Examples) {
  auto r = equilibria_unlimited(Roster({{20, 1}, {5, 1}}, 1, Capacity::unlimited()));
  EXPECT_EQ(Families(r), (std::set<std::vector<int>>{{1}}));
  EXPECT_DOUBLE_EQ(r.equilibria[0].prices[0], 8.0);
  EXPECT_DOUBLE_EQ(r.equilibria[0].expected_profits[0], 7.0);

  r = equilibria_unlimited(Roster({{11, 0}, {9, 0}, {3, 0}}, 4, Capacity::unlimited()));
  ASSERT_EQ(r.equilibria.size(), 1u);
  EXPECT_TRUE(r.equilibria[0].disclosers.empty());
  EXPECT_EQ(r.equilibria[0].prices, (std::vector<double>{0, 0, 0}));

  r = equilibria_unlimited(Roster({{20, 1}, {19.5, 1}}, 1, Capacity::unlimited()));
  EXPECT_EQ(Families(r), (std::set<std::vector<int>>{{1}, {2}}));
  EXPECT_TRUE(r.multiple);

  EXPECT_THROW(equilibria_unlimited(Roster({{20, 1}, {5, 1}}, 1, Capacity::of(1))), ConfigError);
}

TEST(EquilibriaSingleTest, Examples) {
  auto r = equilibria_single(Roster({{20, 1}, {19.5, 1}, {19, 1}, {6, 0}}, 2, Capacity::of(1)));
  EXPECT_EQ(Families(r), (std::set<std::vector<int>>{{1, 2}, {1, 3}, {2, 3}}));

  r = equilibria_single(Roster({{11, 0}, {9, 0}, {3, 0}}, 2, Capacity::of(1)));
  ASSERT_EQ(r.equilibria.size(), 1u);
  EXPECT_TRUE(r.equilibria[0].disclosers.empty());

  MarketConfig cfg = Roster({{18, 1}}, 5, Capacity::of(1));
  for (int i = 0; i < 6; ++i) cfg.sellers.push_back({10 + i, 9.0, 0.5, Capacity::of(1)});
  r = equilibria_single(cfg);
  EXPECT_EQ(Families(r), (std::set<std::vector<int>>{{1}}));

  EXPECT_THROW(equilibria_single(Roster({{20, 1}, {19, 1}}, 2, Capacity::of(1))), ConfigError);
}

TEST(EquilibriaLimitedTest, EveryEquilibriumHasFourMembers) {
  std::vector<std::pair<double, double>> qc;
  for (int i = 0; i < 6; ++i) qc.push_back({20.0 - 0.1 * i, 1.0});
  for (int i = 0; i < 4; ++i) qc.push_back({8.0, 0.5});
  const auto r = equilibria_limited(Roster(qc, 32, Capacity::of(8)), kSetsOnly);
  ASSERT_FALSE(r.equilibria.empty());
  for (const auto& e : r.equilibria) EXPECT_EQ(e.disclosers.size(), 4u);
  EXPECT_THROW(equilibria_limited(Roster({{20, 1}, {19, 1}}, 32, Capacity::of(8))), ConfigError);
}

TEST(EquilibriaLimitedTest, SpecializesToOtherScenarios) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> q(8, 20), c(0, 5);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::pair<double, double>> qc;
    for (int i = 0; i < 7; ++i) qc.push_back({q(rng), c(rng)});
    const int k = 2 + trial % 3;
    const MarketConfig ones = Roster(qc, k, Capacity::of(1));
    EXPECT_EQ(Families(equilibria_limited(ones, kSetsOnly)),
              Families(equilibria_single(ones, kSetsOnly)));
    const MarketConfig big = Roster(qc, k, Capacity::of(k));
    const MarketConfig inf = Roster(qc, k, Capacity::unlimited());
    EXPECT_EQ(Families(equilibria_limited(big, kSetsOnly)),
              Families(equilibria_unlimited(inf, kSetsOnly)));
  }
}

TEST(EquilibriaTest, CardinalityBounds) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> q(8, 20), c(0, 5);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::pair<double, double>> qc;
    for (int i = 0; i < 9; ++i) qc.push_back({q(rng), c(rng)});
    const int k = 3 + trial % 4;
    for (const auto& e : equilibria_unlimited(Roster(qc, k, Capacity::unlimited()), kSetsOnly).equilibria)
      EXPECT_LE(e.disclosers.size(), 1u);
    for (const auto& e : equilibria_single(Roster(qc, k, Capacity::of(1)), kSetsOnly).equilibria)
      EXPECT_LE(e.disclosers.size(), static_cast<std::size_t>(k));
    const auto lim = equilibria_limited(Roster(qc, k, Capacity::of(2)), kSetsOnly);
    for (const auto& e : lim.equilibria) {
      const long sum = 2L * e.disclosers.size();
      if (e.label.rfind("covers-demand", 0) == 0) {
        EXPECT_GE(sum, k);
        EXPECT_LT(sum - 2, k);
      } else if (!e.disclosers.empty()) {
        EXPECT_LT(sum, k);
      }
    }
  }
}

TEST(EquilibriaTest, ReturnedSetsPassDeviationCheck) {
  // A coarse price grid keeps the capacity dynamic program affordable.
  EnumerationOptions opts;
  opts.grid.price_step = 0.05;
  const std::vector<std::pair<double, double>> qc{{20, 1}, {18, 1.5}, {15, 1}, {9, 0.2}};
  for (Capacity cap : {Capacity::unlimited(), Capacity::of(1), Capacity::of(2)}) {
    const MarketConfig cfg = Roster(qc, 3, cap);
    const Scenario sc = cap.is_unlimited()       ? Scenario::Unlimited
                        : cap.units() == 1 ? Scenario::Single
                                               : Scenario::Limited;
    const auto r = equilibria(cfg, sc, opts);
    ASSERT_FALSE(r.equilibria.empty());
    for (const auto& e : r.equilibria) {
      const auto v = oracle::verify_equilibrium(ProfileOf(cfg, e), cfg, opts.grid);
      if (e.label.find("price-cycle") == std::string::npos) {
        EXPECT_TRUE(v.verified) << to_string(sc) << " " << e.label;
      } else {
        // Undercutting never settles, so only the disclosure choice is tested.
        ASSERT_TRUE(v.worst_disclosure.has_value());
        EXPECT_LE(v.worst_disclosure->gain, v.tolerance) << to_string(sc) << " " << e.label;
      }
    }
  }
}

TEST(EquilibriaTest, TranslationInvariant) {
  const std::vector<std::pair<double, double>> qc{{20, 1}, {18, 1.5}, {15, 1}, {9, 0.2}};
  std::vector<std::pair<double, double>> shifted;
  for (auto [q, c] : qc) shifted.push_back({q + 5, c});
  for (Capacity cap : {Capacity::unlimited(), Capacity::of(1), Capacity::of(2)}) {
    const Scenario sc = cap.is_unlimited()       ? Scenario::Unlimited
                        : cap.units() == 1 ? Scenario::Single
                                               : Scenario::Limited;
    EXPECT_EQ(Families(equilibria(Roster(qc, 3, cap), sc, kSetsOnly)),
              Families(equilibria(Roster(shifted, 3, cap, {15, 2}), sc, kSetsOnly)));
  }
}

TEST(EquilibriaTest, DuopolyListsCorners) {
  const auto r = equilibria(Roster({{8, 0.01}, {8, 0.01}}, 1, Capacity::unlimited()),
                            Scenario::Duopoly);
  EXPECT_EQ(Families(r), (std::set<std::vector<int>>{{1}, {2}}));
  for (const auto& e : r.equilibria) EXPECT_EQ(e.label, "pattern II");
}

TEST(DisclosureCountOrderingTest, Examples) {
  auto o = disclosure_count_ordering(Roster({{20, 1}, {19, 1}, {18, 1}, {5, 1}}, 3,
                                            Capacity::unlimited()),
                                     2);
  EXPECT_EQ(o.unlimited.max, 1u);
  EXPECT_EQ(o.limited.min, 2u);
  EXPECT_EQ(o.limited.max, 2u);
  EXPECT_EQ(o.single.max, 3u);
  EXPECT_TRUE(o.holds);
  EXPECT_TRUE(o.holds_for_all_triples);

  o = disclosure_count_ordering(Roster({{11, 0}, {9, 0}, {3, 0}, {2, 0}}, 3, Capacity::of(1)),
                                2);
  EXPECT_EQ(o.unlimited.max + o.limited.max + o.single.max, 0u);
  EXPECT_TRUE(o.holds);
}

TEST(DisclosureCountOrderingTest, HoldsOnRandomRosters) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> q(8, 20), c(0, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::pair<double, double>> qc;
    const int n = 6 + trial % 5;
    for (int i = 0; i < n; ++i) qc.push_back({q(rng), c(rng)});
    const auto o = disclosure_count_ordering(Roster(qc, 4, Capacity::unlimited()), 2);
    EXPECT_TRUE(o.holds) << "trial " << trial;
    EXPECT_FALSE(o.truncated);
  }
}

TEST(MembershipTest, AgreesWithEnumeration) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> q(8, 20), c(0, 5);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<std::pair<double, double>> qc;
    for (int i = 0; i < 6; ++i) qc.push_back({q(rng), c(rng)});
    const double pq = q(rng), pc = c(rng);
    const MarketConfig pop = Roster(qc, 3, Capacity::unlimited());
    for (Capacity cap : {Capacity::unlimited(), Capacity::of(1), Capacity::of(2)}) {
      std::vector<std::pair<double, double>> all = qc;
      all.push_back({pq, pc});
      const MarketConfig full = Roster(all, 3, cap);
      const Scenario sc = cap.is_unlimited()       ? Scenario::Unlimited
                          : cap.units() == 1 ? Scenario::Single
                                                 : Scenario::Limited;
      bool member = false;
      for (const auto& e : equilibria(full, sc, kSetsOnly).equilibria)
        member |= std::count(e.disclosers.begin(), e.disclosers.end(), 7) > 0;
      EXPECT_EQ(member_of_some_equilibrium(pop, pq, pc, cap), member)
          << "trial " << trial << " " << to_string(sc);
    }
  }
}

}  // namespace
}  // namespace infodisc
