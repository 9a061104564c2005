// Command-line driver: single runs, gamma-bar sweeps, seed ensembles, and
// continuum steady-state tables, all emitting CSV/JSON artifacts.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swarmsim/errors.hpp"
#include "swarmsim/experiment.hpp"
#include "swarmsim/tactics.hpp"

namespace {

using namespace swarmsim;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

/// Grids come either as comma-separated values ("0,0.1,0.25") or as a
/// linspace "lo:hi:count".
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  const auto colon = std::count(text.begin(), text.end(), ':');
  try {
    if (colon == 2) {
      const auto c1 = text.find(':');
      const auto c2 = text.find(':', c1 + 1);
      const double lo = std::stod(text.substr(0, c1));
      const double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
      const long count = std::stol(text.substr(c2 + 1));
      if (count < 1) throw ConfigError("grid count must be >= 1");
      if (count == 1) return {lo};
      for (long i = 0; i < count; ++i)
        out.push_back(lo + (hi - lo) * static_cast<double>(i) /
                               static_cast<double>(count - 1));
      return out;
    }
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse grid '" + text +
                      "' (use v1,v2,... or lo:hi:count)");
  }
  if (out.empty()) throw ConfigError("grid '" + text + "' is empty");
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string cell;
  try {
    while (std::getline(ss, cell, ',')) out.push_back(std::stoull(cell));
  } catch (const std::exception&) {
    throw ConfigError("cannot parse seed list '" + text + "'");
  }
  if (out.empty()) throw ConfigError("seed list is empty");
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Flags shared by run/sweep/ensemble; values recorded only when the user
/// actually passed them, so they override config-file entries.
struct CommonFlags {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  std::string tactic;
  double gamma_bar = 0;
  long long ticks_burnin = 0;
  long long ticks_measure = 0;
  std::string env_kind;
  double env_l = 0;
  double env_p = 0;
  std::uint64_t env_seed = 0;
  std::string env_file;
  double phi_init = 0;
  std::uint32_t n = 0;
  long long k_period = 0;
  double phi_min = 0;
  double phi_threshold = 0;
  long long sample_every = 0;
  std::size_t hist_bins = 0;
  double ccs_cutoff = 0;
  unsigned jobs = 0;

  CLI::App* cmd = nullptr;

  void attach(CLI::App* app) {
    cmd = app;
    app->add_option("--config", config_path, "JSON config file");
    app->add_option("--out", out_dir, "output directory");
    app->add_option("--seed", seed, "simulation seed");
    app->add_option("--tactic", tactic,
                    "sequence|random|timer|filtered|filtered+|filtered++");
    app->add_option("--gamma-bar", gamma_bar,
                    "normalised loss ratio gamma*tau*K");
    app->add_option("--ticks-burnin", ticks_burnin, "burn-in ticks");
    app->add_option("--ticks-measure", ticks_measure, "measurement ticks");
    app->add_option("--env", env_kind, "environment kind: flat|er|file");
    app->add_option("--env-l", env_l, "flat link efficiency");
    app->add_option("--env-p", env_p, "ER link probability");
    app->add_option("--env-seed", env_seed, "environment seed");
    app->add_option("--env-file", env_file, "environment CSV path");
    app->add_option("--phi-init", phi_init,
                    "initial off-diagonal belief (default: phi_min)");
    app->add_option("--n", n, "agent count");
    app->add_option("--k-period", k_period, "reference period K (ticks)");
    app->add_option("--phi-min", phi_min, "find-by-chance floor");
    app->add_option("--phi-threshold", phi_threshold,
                    "accurate-targeting threshold");
    app->add_option("--sample-every", sample_every,
                    "observer cadence in ticks");
    app->add_option("--hist-bins", hist_bins, "belief histogram bins");
    app->add_option("--ccs-cutoff", ccs_cutoff,
                    "ccs_fraction below this flags a missing CCS");
    app->add_option("--jobs", jobs, "worker threads (0 = all cores)");
  }

  bool passed(const std::string& name) const {
    return cmd->count(name) > 0;
  }

  ExperimentSpec resolve() const {
    ExperimentSpec spec;
    if (!config_path.empty())
      spec = parse_experiment_spec(slurp(config_path));

    SimParams& p = spec.run.params;
    if (passed("--seed")) p.seed = seed;
    if (passed("--tactic")) {
      p.tactic = TacticConfig{};
      p.tactic.kind = parse_tactic(tactic);
    }
    if (passed("--ticks-burnin")) p.ticks_burnin = ticks_burnin;
    if (passed("--ticks-measure")) p.ticks_measure = ticks_measure;
    if (passed("--n")) p.n = n;
    if (passed("--k-period")) p.k_period = k_period;
    if (passed("--phi-min")) p.phi_min = phi_min;
    if (passed("--phi-threshold")) p.phi_threshold = phi_threshold;
    if (passed("--phi-init")) p.phi_init = phi_init;
    // gamma-bar depends on K; apply after any K override.
    if (passed("--gamma-bar")) p.set_gamma_bar(gamma_bar);

    if (passed("--env")) {
      if (env_kind == "flat") spec.run.env.kind = EnvSpec::Kind::kFlat;
      else if (env_kind == "er") spec.run.env.kind = EnvSpec::Kind::kEr;
      else if (env_kind == "file") spec.run.env.kind = EnvSpec::Kind::kFile;
      else throw ConfigError("--env must be flat|er|file");
    }
    if (passed("--env-l")) spec.run.env.l = env_l;
    if (passed("--env-p")) spec.run.env.p = env_p;
    if (passed("--env-seed")) spec.run.env.seed = env_seed;
    if (passed("--env-file")) spec.run.env.file = env_file;
    if (passed("--sample-every")) spec.run.sample_every = sample_every;
    if (passed("--hist-bins")) spec.run.hist_bins = hist_bins;
    if (passed("--ccs-cutoff")) spec.run.ccs_cutoff = ccs_cutoff;
    if (passed("--jobs")) spec.jobs = jobs;
    return spec;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"swarmsim: stochastic swarm-communication simulator"};
  app.require_subcommand(1);

  CommonFlags run_flags, sweep_flags, ensemble_flags;
  std::string sweep_grid_text, ensemble_seeds_text;

  CLI::App* cmd_run =
      app.add_subcommand("run", "single run; writes metrics/hist/links/summary");
  run_flags.attach(cmd_run);

  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "one run per gamma-bar grid point");
  sweep_flags.attach(cmd_sweep);
  cmd_sweep->add_option("--gamma-bar-grid", sweep_grid_text,
                        "grid: v1,v2,... or lo:hi:count");

  CLI::App* cmd_ensemble =
      app.add_subcommand("ensemble", "independent runs over a seed list");
  ensemble_flags.attach(cmd_ensemble);
  cmd_ensemble->add_option("--seeds", ensemble_seeds_text,
                           "comma-separated seed list");

  CLI::App* cmd_continuum = app.add_subcommand(
      "continuum", "steady-state table over (r, phi_min) grids");
  std::string r_grid_text = "0:3:61";
  std::string phi_min_grid_text = "0:0.5:11";
  double r_prime = -1.0;
  std::string continuum_out = "continuum.csv";
  cmd_continuum->add_option("--r-grid", r_grid_text,
                            "loss-ratio grid: v1,v2,... or lo:hi:count");
  cmd_continuum->add_option("--phi-min-grid", phi_min_grid_text,
                            "floor grid: v1,v2,... or lo:hi:count");
  auto* r_prime_opt = cmd_continuum->add_option(
      "--r-prime", r_prime, "backward loss ratio (enables pair mode)");
  cmd_continuum->add_option("--out", continuum_out, "output CSV file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) {
      const ExperimentSpec spec = run_flags.resolve();
      const RunResult result = run_single(spec.run);
      write_run_artifacts(result, spec.run, run_flags.out_dir);
      std::cout << "wrote " << run_flags.out_dir << "/{metrics,hist,links}"
                << ".csv and summary.json\n";
    } else if (cmd_sweep->parsed()) {
      ExperimentSpec spec = sweep_flags.resolve();
      if (!sweep_grid_text.empty())
        spec.gamma_bar_grid = parse_grid(sweep_grid_text);
      if (spec.gamma_bar_grid.empty())
        throw ConfigError("sweep needs --gamma-bar-grid or a config grid");
      const auto points =
          run_sweep(spec.run, spec.gamma_bar_grid, spec.jobs);
      write_sweep_artifacts(points, spec.run, sweep_flags.out_dir);
      std::cout << "wrote " << sweep_flags.out_dir << "/sweep.csv and "
                << points.size() << " histogram files\n";
    } else if (cmd_ensemble->parsed()) {
      ExperimentSpec spec = ensemble_flags.resolve();
      if (!ensemble_seeds_text.empty())
        spec.seeds = parse_seed_list(ensemble_seeds_text);
      if (spec.seeds.empty())
        throw ConfigError("ensemble needs --seeds or a config seed list");
      const EnsembleResult result =
          run_ensemble(spec.run, spec.seeds, spec.jobs);
      write_ensemble_artifacts(result, spec.run, ensemble_flags.out_dir);
      std::cout << "wrote " << ensemble_flags.out_dir
                << "/ensemble.{csv,json}\n";
    } else if (cmd_continuum->parsed()) {
      const auto r_grid = parse_grid(r_grid_text);
      const auto pm_grid = parse_grid(phi_min_grid_text);
      const bool pair_mode = r_prime_opt->count() > 0;
      const auto rows =
          pair_mode ? continuum_pair_table(r_grid, pm_grid, r_prime)
                    : continuum_symmetric_table(r_grid, pm_grid);
      write_continuum_csv(rows, pair_mode, continuum_out);
      std::cout << "wrote " << continuum_out << " (" << rows.size()
                << " rows)\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
