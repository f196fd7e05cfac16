// Command-line front end: config files in, CSV tables and JSON reports out.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error.

#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "infodisc/config_io.hpp"
#include "infodisc/duopoly.hpp"
#include "infodisc/oligopoly.hpp"
#include "infodisc/oracle.hpp"
#include "infodisc/simulator.hpp"
#include "infodisc/sweeps.hpp"

namespace {

using namespace infodisc;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kConfigError = 2;

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ConfigError("cannot write " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

MarketConfig load_checked(const std::string& path) {
  const ValidatedConfig v = validate_config(config_from_json(read_json_file(path)));
  for (const auto& w : v.warnings) std::cerr << "warning: " << w << '\n';
  return v.config;
}

Belief belief_or_default(const std::string& path) {
  return path.empty() ? Belief{} : load_checked(path).belief;
}

StrategyProfile require_profile(const std::string& path) {
  const auto profile = load_profile(path);
  if (!profile) throw ConfigError(path + ": no \"profile\" entry");
  return *profile;
}

Scenario infer_scenario(const MarketConfig& cfg) {
  if (cfg.seller_count() == 2 && cfg.buyers == 1) return Scenario::Duopoly;
  bool all_unlimited = true, all_single = true;
  for (const auto& s : cfg.sellers) {
    all_unlimited = all_unlimited && s.capacity.is_unlimited();
    all_single = all_single && !s.capacity.is_unlimited() && s.capacity.units() == 1;
  }
  if (all_unlimited) return Scenario::Unlimited;
  if (all_single) return Scenario::Single;
  return Scenario::Limited;
}

struct Options {
  std::string config;
  std::string out;
  std::uint64_t seed = 42;
  int draws = 10000;
  double grid_step = 0.01;
  std::string scenario;
  int omega = 8;
  int sample_population = 0;
  double alpha_step = 1.0;
  bool psi_sweep = false;
  int steps = 81;
  double q_min = 0.0, q_max = 20.0;
  double c_min = 1.0, c_max = 10.0;
  int c_steps = 91;
  std::string summary;
};

int run_duopoly(const Options& o) {
  Output out(o.out);
  if (o.psi_sweep) {
    sweeps::write_psi_sweep_csv(out.stream(), belief_or_default(o.config), o.steps);
    return kOk;
  }
  if (o.config.empty()) throw ConfigError("duopoly needs --config (or --psi-sweep)");
  const MarketConfig cfg = load_checked(o.config);
  const auto rows = sweeps::duopoly_table(cfg, o.alpha_step);
  sweeps::write_duopoly_csv(out.stream(), cfg, rows, sweeps::duopoly_summary(cfg));
  return kOk;
}

int run_structure_map(const Options& o) {
  const Belief belief = belief_or_default(o.config);
  const sweeps::Axis q1{"q1", o.q_min, o.q_max, o.steps};
  const sweeps::Axis q2{"q2", o.q_min, o.q_max, o.steps};
  const auto cells = sweeps::structure_map(belief, q1, q2);
  Output out(o.out);
  sweeps::write_structure_csv(out.stream(), belief, q1, q2, cells);
  return kOk;
}

int run_eligible_map(const Options& o) {
  if (o.scenario.empty()) throw ConfigError("eligible-map needs --scenario");
  const Scenario scenario = scenario_from_string(o.scenario);
  const Capacity capacity = sweeps::scenario_capacity(scenario, o.omega);
  const sweeps::Axis q{"q", o.q_min, o.q_max, o.steps};
  const sweeps::Axis c{"c", o.c_min, o.c_max, o.c_steps};
  MarketConfig population = sweeps::default_population();
  std::string source = "grid";
  if (!o.config.empty()) {
    population = load_checked(o.config);
    source = "config";
  }
  if (o.sample_population > 0) {
    population = sweeps::sample_population(o.sample_population, o.seed, population.belief,
                                           population.buyers, {"q", 1.0, 20.0, 2},
                                           {"c", 1.0, 10.0, 2});
    source = "sampled";
  }
  for (auto& s : population.sellers) s.capacity = capacity;
  const auto boundary = sweeps::region_boundary(population, capacity, o.c_min, o.q_min, o.q_max);
  json header = {{"command", "eligible-map"},
                 {"scenario", o.scenario},
                 {"population", source},
                 {"axes", {q.to_json(), c.to_json()}},
                 {"boundary", {{"c", o.c_min},
                               {"found", boundary.found},
                               {"q", boundary.quality},
                               {"closed", boundary.closed}}},
                 {"config", config_to_json(population)}};
  if (o.sample_population > 0) header["seed"] = o.seed;
  Output out(o.out);
  sweeps::write_eligible_csv(out.stream(), header, sweeps::eligible_map(population, capacity, q, c));
  return kOk;
}

int run_equilibria(const Options& o) {
  if (o.config.empty()) throw ConfigError("equilibria needs --config");
  const MarketConfig cfg = load_checked(o.config);
  const Scenario scenario = o.scenario.empty() ? infer_scenario(cfg) : scenario_from_string(o.scenario);
  EnumerationOptions opts;
  opts.grid.price_step = o.grid_step;
  const EquilibriumReport report = equilibria(cfg, scenario, opts);
  Output out(o.out);
  out.stream() << report_to_json(report).dump(2) << '\n';
  return kOk;
}

int run_simulate(const Options& o) {
  if (o.config.empty()) throw ConfigError("simulate needs --config");
  const MarketConfig cfg = load_checked(o.config);
  const StrategyProfile profile = require_profile(o.config);
  const SimRun run = simulate(cfg, profile, o.seed, o.draws, {.record_rows = true});
  Output out(o.out);
  write_sim_csv(out.stream(), run);
  const std::string summary = sim_summary_json(run).dump(2);
  if (o.summary.empty()) {
    std::cerr << summary << '\n';
  } else {
    Output s(o.summary);
    s.stream() << summary << '\n';
  }
  return kOk;
}

int run_verify(const Options& o) {
  if (o.config.empty()) throw ConfigError("verify needs --config");
  const MarketConfig cfg = load_checked(o.config);
  const StrategyProfile profile = require_profile(o.config);
  oracle::GridSpec grid;
  grid.price_step = o.grid_step;
  const auto v = oracle::verify_equilibrium(profile, cfg, grid);
  json report = {{"verified", v.verified}, {"price_tolerance", v.tolerance}};
  if (v.worst) {
    report["worst_deviation"] = {{"seller", v.worst->seller_id},
                                 {"alpha", v.worst->disclosure},
                                 {"price", v.worst->price},
                                 {"gain", v.worst->gain},
                                 {"disclosure_change", v.worst->disclosure_change}};
  }
  Output out(o.out);
  out.stream() << report.dump(2) << '\n';
  return v.verified ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disclosure and pricing equilibria of sellers in a sharing market"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Market config JSON");
    sub->add_option("--out", o.out, "Output path (default stdout)");
  };

  auto* duo = app.add_subcommand("duopoly", "Prices, win probabilities and profits of a duopoly");
  common(duo);
  duo->add_option("--alpha-step", o.alpha_step, "Disclosure grid step for table rows")
      ->capture_default_str();
  duo->add_flag("--psi-sweep", o.psi_sweep, "Sweep psi over [-4 xi, 4 xi] instead");
  duo->add_option("--steps", o.steps, "Points in the psi sweep")->capture_default_str();

  auto* smap = app.add_subcommand("structure-map", "Equilibrium structure over (Q1, Q2)");
  common(smap);
  smap->add_option("--q-min", o.q_min)->capture_default_str();
  smap->add_option("--q-max", o.q_max)->capture_default_str();
  smap->add_option("--steps", o.steps, "Points per axis")->capture_default_str();

  auto* emap = app.add_subcommand("eligible-map", "Which (Q, c) can disclose at some equilibrium");
  common(emap);
  emap->add_option("--scenario", o.scenario, "unlimited | single | limited");
  emap->add_option("--omega", o.omega, "Capacity in the limited scenario")->capture_default_str();
  emap->add_option("--sample-population", o.sample_population,
                   "Draw this many random sellers instead of the integer grid");
  emap->add_option("--seed", o.seed)->capture_default_str();
  emap->add_option("--q-min", o.q_min)->capture_default_str();
  emap->add_option("--q-max", o.q_max)->capture_default_str();
  emap->add_option("--steps", o.steps, "Points on the Q axis")->capture_default_str();
  emap->add_option("--c-min", o.c_min)->capture_default_str();
  emap->add_option("--c-max", o.c_max)->capture_default_str();
  emap->add_option("--c-steps", o.c_steps, "Points on the c axis")->capture_default_str();

  auto* eq = app.add_subcommand("equilibria", "Enumerate equilibria as JSON");
  common(eq);
  eq->add_option("--scenario", o.scenario, "duopoly | unlimited | single | limited");
  eq->add_option("--grid-step", o.grid_step, "Price grid step")->capture_default_str();

  auto* sim = app.add_subcommand("simulate", "Monte Carlo replications of the config's profile");
  common(sim);
  sim->add_option("--seed", o.seed)->capture_default_str();
  sim->add_option("--draws", o.draws)->capture_default_str();
  sim->add_option("--summary", o.summary, "Summary JSON path (default stderr)");

  auto* ver = app.add_subcommand("verify", "Check the config's profile for profitable deviations");
  common(ver);
  ver->add_option("--grid-step", o.grid_step, "Price grid step")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    if (*duo) return run_duopoly(o);
    if (*smap) return run_structure_map(o);
    if (*emap) return run_eligible_map(o);
    if (*eq) return run_equilibria(o);
    if (*sim) return run_simulate(o);
    if (*ver) return run_verify(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const AssumptionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerifyFailed;
  }
  return kOk;
}
