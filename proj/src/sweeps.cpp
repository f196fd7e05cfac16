#include "infodisc/sweeps.hpp"

#include <cmath>
#include <ostream>

#include "infodisc/config_io.hpp"
#include "infodisc/oligopoly.hpp"
#include "infodisc/oracle.hpp"
#include "infodisc/simulator.hpp"

namespace infodisc::sweeps {

namespace {

// Also fixes the precision of the table that follows.
void write_header(std::ostream& out, const nlohmann::json& header) {
  out.precision(12);
  out << "# " << header.dump() << '\n';
}

nlohmann::json belief_json(const Belief& b) { return {{"q0", b.prior}, {"eps0", b.bias}}; }

}  // namespace

std::vector<double> Axis::values() const {
  validate();
  std::vector<double> out;
  const double h = (max - min) / (steps - 1);
  for (int i = 0; i < steps; ++i) out.push_back(i + 1 == steps ? max : min + i * h);
  return out;
}

void Axis::validate() const {
  if (steps < 2) throw ConfigError("axis " + name + " needs at least 2 steps");
  if (!(max > min)) throw ConfigError("axis " + name + " needs max > min");
}

nlohmann::json Axis::to_json() const {
  return {{"name", name}, {"min", min}, {"max", max}, {"steps", steps}};
}

std::vector<DuopolyRow> duopoly_table(const MarketConfig& cfg, double alpha_step) {
  if (cfg.seller_count() != 2) throw ConfigError("duopoly needs exactly 2 sellers");
  oracle::GridSpec grid;
  grid.alpha_step = alpha_step;
  grid.validate();
  const Pair<double> q{cfg.sellers[0].quality, cfg.sellers[1].quality};
  const Pair<double> c{cfg.sellers[0].cost, cfg.sellers[1].cost};
  std::vector<DuopolyRow> rows;
  for (double a1 : grid.alpha_levels()) {
    for (double a2 : grid.alpha_levels()) {
      DuopolyRow row;
      row.alpha = {a1, a2};
      row.pricing = pricing_equilibrium(row.alpha, q, cfg.belief);
      row.psi = row.pricing.psi;
      row.xi = row.pricing.xi;
      row.win = win_probability(row.alpha, row.pricing.prices, q, cfg.belief);
      row.profit = stage1_expected_profits(row.alpha, q, c, cfg.belief);
      rows.push_back(row);
    }
  }
  return rows;
}

DuopolySummary duopoly_summary(const MarketConfig& cfg) {
  const Pair<double> q{cfg.sellers[0].quality, cfg.sellers[1].quality};
  const Pair<double> c{cfg.sellers[0].cost, cfg.sellers[1].cost};
  DuopolySummary out;
  out.pattern = oracle::label_or_anomaly(oracle::derive_pattern(q, c, cfg.belief).label);
  if (cfg.belief.bias > 0.0 && cfg.belief.within_assumption())
    out.structure = to_string(classify_structure(q[0], q[1], cfg.belief));
  return out;
}

void write_duopoly_csv(std::ostream& out, const MarketConfig& cfg,
                       const std::vector<DuopolyRow>& rows, const DuopolySummary& summary) {
  write_header(out, {{"command", "duopoly"}, {"config", config_to_json(cfg)}});
  out << "alpha1,alpha2,psi,xi,pricing,branch,p1,p2,win1,win2,profit1,profit2,pattern,structure\n";
  for (const auto& r : rows) {
    const bool pure = r.pricing.kind != PricingKind::NoPureEquilibrium;
    out << r.alpha[0] << ',' << r.alpha[1] << ',' << r.psi << ',' << r.xi << ','
        << to_string(r.pricing.kind) << ',' << to_string(r.pricing.branch) << ',';
    if (pure)
      out << r.pricing.prices[0] << ',' << r.pricing.prices[1] << ',' << r.win[0] << ','
          << r.win[1];
    else
      out << ",,,";
    out << ',' << r.profit[0] << ',' << r.profit[1] << ',' << summary.pattern << ','
        << summary.structure << '\n';
  }
}

void write_psi_sweep_csv(std::ostream& out, const Belief& belief, int steps) {
  if (steps < 2) throw ConfigError("psi sweep needs at least 2 steps");
  if (!(belief.bias > 0.0)) throw ConfigError("psi sweep needs eps0 > 0");
  const double xi = belief.bias;
  write_header(out, {{"command", "duopoly --psi-sweep"},
                     {"belief", belief_json(belief)},
                     {"alpha", {1.0, 0.0}},
                     {"steps", steps}});
  out << "psi,xi,q1,branch,p1,p2\n";
  for (int i = 0; i < steps; ++i) {
    const double psi = -4.0 * xi + 8.0 * xi * i / (steps - 1);
    const double q1 = belief.prior + psi;
    const auto pr = pricing_equilibrium({1.0, 0.0}, {q1, belief.prior}, belief);
    out << psi << ',' << xi << ',' << q1 << ',' << to_string(pr.branch) << ',' << pr.prices[0]
        << ',' << pr.prices[1] << '\n';
  }
}

std::vector<StructureCell> structure_map(const Belief& belief, const Axis& q1, const Axis& q2) {
  std::vector<StructureCell> cells;
  for (double a : q1.values()) {
    for (double b : q2.values()) {
      if (b > a) continue;
      const auto s = classify_structure_detailed(a, b, belief);
      cells.push_back({a, b,
                       to_string(quality_category(a, belief)) +
                           to_string(quality_category(b, belief)),
                       s.label, s.on_boundary});
    }
  }
  return cells;
}

void write_structure_csv(std::ostream& out, const Belief& belief, const Axis& q1, const Axis& q2,
                         const std::vector<StructureCell>& cells) {
  write_header(out, {{"command", "structure-map"},
                     {"belief", belief_json(belief)},
                     {"axes", {q1.to_json(), q2.to_json()}}});
  out << "q1,q2,profile,structure,on_boundary\n";
  for (const auto& c : cells)
    out << c.q1 << ',' << c.q2 << ',' << c.profile << ',' << to_string(c.label) << ','
        << (c.on_boundary ? 1 : 0) << '\n';
}

MarketConfig default_population() {
  MarketConfig cfg;
  cfg.belief = {10.0, 2.0};
  cfg.buyers = 32;
  int id = 0;
  for (int q = 1; q <= 20; ++q)
    for (int c = 1; c <= 10; ++c) cfg.sellers.push_back({id++, double(q), double(c)});
  return cfg;
}

MarketConfig sample_population(int count, std::uint64_t seed, const Belief& belief, int buyers,
                               const Axis& q, const Axis& c) {
  if (count < 1) throw ConfigError("population size must be positive");
  const CounterRng rng(seed);
  MarketConfig cfg;
  cfg.belief = belief;
  cfg.buyers = buyers;
  for (int i = 0; i < count; ++i) {
    cfg.sellers.push_back({i, q.min + (q.max - q.min) * rng.uniform(0, i, 0),
                           c.min + (c.max - c.min) * rng.uniform(0, i, 1)});
  }
  return cfg;
}

Capacity scenario_capacity(Scenario scenario, int omega) {
  switch (scenario) {
    case Scenario::Unlimited: return Capacity::unlimited();
    case Scenario::Single: return Capacity::of(1);
    case Scenario::Limited: return Capacity::of(omega);
    case Scenario::Duopoly: break;
  }
  throw ConfigError("eligible map needs scenario unlimited, single or limited");
}

std::vector<EligibleCell> eligible_map(const MarketConfig& population, Capacity capacity,
                                       const Axis& q, const Axis& c) {
  std::vector<EligibleCell> cells;
  for (double qv : q.values())
    for (double cv : c.values())
      cells.push_back({qv, cv, member_of_some_equilibrium(population, qv, cv, capacity)});
  return cells;
}

RegionBoundary region_boundary(const MarketConfig& population, Capacity capacity, double c,
                               double q_lo, double q_hi) {
  const auto member = [&](double q) {
    return member_of_some_equilibrium(population, q, c, capacity);
  };
  RegionBoundary out;
  const int scan = 4000;
  double prev = q_lo;
  if (member(q_lo)) {
    out = {q_lo, true, true};
    return out;
  }
  for (int i = 1; i <= scan; ++i) {
    const double q = q_lo + (q_hi - q_lo) * i / scan;
    if (!member(q)) {
      prev = q;
      continue;
    }
    double lo = prev, hi = q;
    for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
      const double mid = 0.5 * (lo + hi);
      (member(mid) ? hi : lo) = mid;
    }
    out.found = true;
    out.quality = hi;
    const double snapped = std::round(hi * 1e6) / 1e6;
    if (std::abs(snapped - hi) < 1e-9) out.quality = snapped;
    out.closed = member(out.quality);
    return out;
  }
  return out;
}

void write_eligible_csv(std::ostream& out, const nlohmann::json& header,
                        const std::vector<EligibleCell>& cells) {
  write_header(out, header);
  out << "q,c,member\n";
  for (const auto& cell : cells) out << cell.q << ',' << cell.c << ',' << (cell.member ? 1 : 0) << '\n';
}

}  // namespace infodisc::sweeps
