#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "infodisc/duopoly.hpp"
#include "infodisc/market.hpp"
#include "json.hpp"

// Table and region-map generators behind the CLI. Each writer emits a CSV
// preceded by one "# {...}" line holding the resolved inputs.

namespace infodisc::sweeps {

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  int steps = 2;

  std::vector<double> values() const;
  void validate() const;
  nlohmann::json to_json() const;
};

struct DuopolyRow {
  Pair<double> alpha{};
  double psi = 0.0;
  double xi = 0.0;
  PricingOutcome pricing;
  Pair<double> win{};
  Pair<double> profit{};
};

/// One row per disclosure pair on a grid of `alpha_step` (1 gives the corners).
std::vector<DuopolyRow> duopoly_table(const MarketConfig& cfg, double alpha_step);

struct DuopolySummary {
  std::string pattern;    // label of the derived equilibrium set, or "anomaly"
  std::string structure;  // empty when the closed form does not apply
};

DuopolySummary duopoly_summary(const MarketConfig& cfg);

void write_duopoly_csv(std::ostream& out, const MarketConfig& cfg,
                       const std::vector<DuopolyRow>& rows, const DuopolySummary& summary);

/// Price curve along psi: seller 1 fully discloses, seller 2 does not, and
/// Q1 moves so that psi spans [-4 xi, 4 xi] with xi = eps0.
void write_psi_sweep_csv(std::ostream& out, const Belief& belief, int steps);

struct StructureCell {
  double q1 = 0.0;
  double q2 = 0.0;
  std::string profile;  // quality categories, e.g. "GM"
  StructureLabel label = StructureLabel::NoneDisclosure;
  bool on_boundary = false;
};

/// Cells with Q1 >= Q2 only.
std::vector<StructureCell> structure_map(const Belief& belief, const Axis& q1, const Axis& q2);
void write_structure_csv(std::ostream& out, const Belief& belief, const Axis& q1, const Axis& q2,
                         const std::vector<StructureCell>& cells);

/// Sellers on the integer grid Q = 1..20, c = 1..10 with K = 32, Q0 = 10, eps0 = 2.
MarketConfig default_population();

/// `count` sellers with Q ~ U[q_min, q_max], c ~ U[c_min, c_max].
MarketConfig sample_population(int count, std::uint64_t seed, const Belief& belief, int buyers,
                               const Axis& q, const Axis& c);

/// Capacity a scenario assigns to every seller.
Capacity scenario_capacity(Scenario scenario, int omega);

struct EligibleCell {
  double q = 0.0;
  double c = 0.0;
  bool member = false;
};

std::vector<EligibleCell> eligible_map(const MarketConfig& population, Capacity capacity,
                                       const Axis& q, const Axis& c);

struct RegionBoundary {
  double quality = 0.0;  // infimum quality that can disclose at the given cost
  bool closed = false;   // whether the infimum itself can disclose
  bool found = false;
};

/// Lower quality boundary of the eligible region at cost `c`, located by a
/// scan over [q_lo, q_hi] followed by bisection.
RegionBoundary region_boundary(const MarketConfig& population, Capacity capacity, double c,
                               double q_lo, double q_hi);

void write_eligible_csv(std::ostream& out, const nlohmann::json& header,
                        const std::vector<EligibleCell>& cells);

}  // namespace infodisc::sweeps
