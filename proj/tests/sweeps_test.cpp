#include <gtest/gtest.h>

#include <array>
#include <sstream>

#include "infodisc/oligopoly.hpp"
#include "infodisc/sweeps.hpp"

namespace infodisc::sweeps {
namespace {

const Belief kBelief{10.0, 2.0};

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(AxisTest, ValuesIncludeEndpoints) {
  const Axis a{"q", 0, 20, 41};
  const auto v = a.values();
  ASSERT_EQ(v.size(), 41u);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_EQ(v[8], 4.0);
  EXPECT_EQ(v.back(), 20.0);
  EXPECT_THROW((Axis{"q", 0, 20, 1}.validate()), ConfigError);
  EXPECT_THROW((Axis{"q", 5, 5, 3}.validate()), ConfigError);
}

TEST(StructureMapTest, LowQualityRegions) {
  const Axis q{"q", 0, 20, 81};
  const auto cells = structure_map(kBelief, q, q);
  ASSERT_FALSE(cells.empty());
  for (const auto& cell : cells) {
    EXPECT_GE(cell.q1, cell.q2);
    if (cell.on_boundary) continue;
    EXPECT_EQ(cell.label == StructureLabel::NoneDisclosure, cell.q1 < 4.0)
        << cell.q1 << "," << cell.q2;
    EXPECT_EQ(cell.label == StructureLabel::LNeverDisclosure, cell.q2 < 4.0 && cell.q1 > 4.0)
        << cell.q1 << "," << cell.q2;
  }
}

TEST(StructureMapTest, TranslationInvariant) {
  const Axis q{"q", 0, 20, 41}, shifted{"q", 5, 25, 41};
  const auto a = structure_map(kBelief, q, q);
  const auto b = structure_map({15.0, 2.0}, shifted, shifted);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].label, b[i].label) << a[i].q1 << "," << a[i].q2;
    EXPECT_EQ(a[i].profile, b[i].profile);
  }
}

TEST(StructureMapTest, CsvHasHeaderCommentAndColumns) {
  const Axis q{"q", 0, 20, 5};
  std::ostringstream out;
  write_structure_csv(out, kBelief, q, q, structure_map(kBelief, q, q));
  const auto lines = Lines(out.str());
  ASSERT_GE(lines.size(), 3u);
  ASSERT_EQ(lines[0].rfind("# ", 0), 0u);
  const auto header = nlohmann::json::parse(lines[0].substr(2));
  EXPECT_EQ(header.at("belief").at("eps0"), 2.0);
  EXPECT_EQ(lines[1], "q1,q2,profile,structure,on_boundary");
}

TEST(PsiSweepTest, TwoPlateausAndLinearMiddle) {
  std::ostringstream out;
  write_psi_sweep_csv(out, kBelief, 81);
  const auto lines = Lines(out.str());
  ASSERT_EQ(lines.size(), 2u + 81u);
  EXPECT_EQ(lines[0].rfind("# ", 0), 0u);
  ASSERT_EQ(lines[1], "psi,xi,q1,branch,p1,p2");
  std::vector<std::array<double, 4>> rows;  // psi, xi, p1, p2
  for (std::size_t i = 2; i < lines.size(); ++i) {
    std::vector<std::string> f;
    std::istringstream row(lines[i]);
    for (std::string cell; std::getline(row, cell, ',');) f.push_back(cell);
    ASSERT_EQ(f.size(), 6u);
    rows.push_back({std::stod(f[0]), std::stod(f[1]), std::stod(f[4]), std::stod(f[5])});
  }
  const double xi = 2.0;
  for (const auto& r : rows) {
    const double psi = r[0];
    if (psi <= -3 * xi) {
      EXPECT_EQ(r[2], 0.0);
    } else if (psi >= 3 * xi) {
      EXPECT_EQ(r[3], 0.0);
    } else {
      EXPECT_NEAR(r[2], (3 * xi + psi) / 3, 1e-9);
      EXPECT_NEAR(r[3], (3 * xi - psi) / 3, 1e-9);
    }
  }
  EXPECT_NEAR(rows.front()[0], -8.0, 1e-12);
  EXPECT_NEAR(rows.back()[0], 8.0, 1e-12);
}

TEST(DuopolySummaryTest, Examples) {
  MarketConfig cfg;
  cfg.belief = kBelief;
  cfg.sellers = {{1, 3, 0}, {2, 2, 0}};
  EXPECT_EQ(duopoly_summary(cfg).pattern, "IV");
  EXPECT_EQ(duopoly_summary(cfg).structure, "NoneDisclosure");
  cfg.sellers = {{1, 8, 0.01}, {2, 8, 0.01}};
  EXPECT_EQ(duopoly_summary(cfg).pattern, "II");

  const auto rows = duopoly_table(cfg, 1.0);
  ASSERT_EQ(rows.size(), 4u);
  std::ostringstream out;
  write_duopoly_csv(out, cfg, rows, duopoly_summary(cfg));
  const auto lines = Lines(out.str());
  EXPECT_EQ(lines[1],
            "alpha1,alpha2,psi,xi,pricing,branch,p1,p2,win1,win2,profit1,profit2,pattern,structure");
  EXPECT_EQ(lines.size(), 2u + 4u);
}

TEST(DefaultPopulationTest, Shape) {
  const MarketConfig pop = default_population();
  EXPECT_EQ(pop.seller_count(), 200);
  EXPECT_EQ(pop.buyers, 32);
  EXPECT_EQ(pop.belief.prior, 10.0);
  EXPECT_EQ(pop.belief.bias, 2.0);
}

TEST(RegionBoundaryTest, AnalyticEndpointsAndNesting) {
  const MarketConfig pop = default_population();
  const RegionBoundary single = region_boundary(pop, Capacity::of(1), 1.0, 1.0, 20.0);
  const RegionBoundary unlimited = region_boundary(pop, Capacity::unlimited(), 1.0, 1.0, 20.0);
  const RegionBoundary limited = region_boundary(pop, Capacity::of(8), 1.0, 1.0, 20.0);
  ASSERT_TRUE(single.found && unlimited.found && limited.found);
  EXPECT_EQ(single.quality, 12.0);
  EXPECT_FALSE(single.closed);
  EXPECT_EQ(unlimited.quality, 19.0);
  EXPECT_TRUE(unlimited.closed);
  EXPECT_GT(limited.quality, single.quality);
  EXPECT_LT(limited.quality, unlimited.quality);
}

TEST(EligibleMapTest, RegionsNest) {
  const MarketConfig pop = default_population();
  const Axis q{"q", 1, 20, 39}, c{"c", 1, 10, 10};
  const auto u = eligible_map(pop, Capacity::unlimited(), q, c);
  const auto l = eligible_map(pop, Capacity::of(8), q, c);
  const auto s = eligible_map(pop, Capacity::of(1), q, c);
  ASSERT_EQ(u.size(), l.size());
  ASSERT_EQ(l.size(), s.size());
  int nu = 0, nl = 0, ns = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].member) EXPECT_TRUE(l[i].member) << u[i].q << "," << u[i].c;
    if (l[i].member) EXPECT_TRUE(s[i].member) << l[i].q << "," << l[i].c;
    // The single-capacity region is exactly the eligibility region.
    EXPECT_EQ(s[i].member, eligible(s[i].q, s[i].c, pop.belief)) << s[i].q << "," << s[i].c;
    nu += u[i].member;
    nl += l[i].member;
    ns += s[i].member;
  }
  EXPECT_LT(nu, nl);
  EXPECT_LT(nl, ns);
}

TEST(SamplePopulationTest, DeterministicAndInRange) {
  const Axis q{"q", 1, 20, 2}, c{"c", 1, 10, 2};
  const MarketConfig a = sample_population(200, 9, kBelief, 32, q, c);
  const MarketConfig b = sample_population(200, 9, kBelief, 32, q, c);
  ASSERT_EQ(a.seller_count(), 200);
  for (int i = 0; i < 200; ++i) {
    EXPECT_EQ(a.sellers[i].quality, b.sellers[i].quality);
    EXPECT_GE(a.sellers[i].quality, 1.0);
    EXPECT_LE(a.sellers[i].quality, 20.0);
    EXPECT_GE(a.sellers[i].cost, 1.0);
    EXPECT_LE(a.sellers[i].cost, 10.0);
  }
}

}  // namespace
}  // namespace infodisc::sweeps
