#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "swarmsim/metrics.hpp"
#include "swarmsim/params.hpp"
#include "swarmsim/types.hpp"
#include "swarmsim/world.hpp"

namespace swarmsim {

/// How to construct the environment for a run.
struct EnvSpec {
  enum class Kind { kFlat, kEr, kFile };
  Kind kind = Kind::kFlat;
  double l = 0.95;           // flat efficiency
  double p = 0.284;          // ER link probability
  std::uint64_t seed = 0;    // ER seed, independent of the run seed
  std::string file;          // CSV path for Kind::kFile
};

/// Materialise the spec; n is ignored for file-loaded environments (their
/// size comes from the file and is checked at init_world).
Environment make_env(const EnvSpec& spec, std::size_t n);

/// Everything one simulation run needs.
struct RunConfig {
  SimParams params;
  EnvSpec env;
  Tick sample_every = 10;
  std::size_t hist_bins = 50;
  double ccs_cutoff = 0.5;  // ccs_fraction below this flags "no CCS formed"
};

/// A config file can additionally carry sweep/ensemble inputs.
struct ExperimentSpec {
  RunConfig run;
  std::vector<double> gamma_bar_grid;
  std::vector<std::uint64_t> seeds;
  unsigned jobs = 0;  // 0 = hardware concurrency
};

/// Parse the JSON config format (lower_snake_case keys mirroring the
/// parameter fields). Unknown keys are rejected. Throws ConfigError.
ExperimentSpec parse_experiment_spec(const std::string& json_text);

/// Resolved config echo, serialised as JSON (used in summary artifacts).
std::string run_config_to_json(const RunConfig& cfg);

/// Time-averaged measurement-window statistics of one run. Values are NaN
/// when the measurement window was empty (u_r also when the environment
/// has no efficient links).
struct RunSummary {
  double phi_hat_mean = 0;
  double phi_hat_t_mean = 0;
  double risk_norm_mean = 0;
  double ccs_fraction = 0;
  double u_r_final = 0;
};

struct RunResult {
  std::vector<MetricsFrame> frames;
  Histogram hist;
  RunSummary summary;
  World final_world;
};

/// Burn-in (unobserved), then measure with a MetricsRecorder at the
/// configured cadence.
RunResult run_single(const RunConfig& cfg);

struct SweepPoint {
  double gamma_bar = 0;
  RunSummary summary;
  Histogram hist{2};
  bool ccs_formed = false;
};

/// One run per grid point, same environment across points; gamma is
/// derived from each gamma_bar.
std::vector<SweepPoint> run_sweep(const RunConfig& base,
                                  const std::vector<double>& gamma_bar_grid,
                                  unsigned jobs = 0);

struct Aggregate {
  double median = 0;
  double iqr = 0;
};

struct EnsembleResult {
  std::vector<std::uint64_t> seeds;
  std::vector<RunSummary> per_seed;
  Aggregate phi_hat, phi_hat_t, risk_norm, ccs_fraction, u_r_final;
};

/// Independent runs per seed (parallel); results ordered by the seed
/// list. Aggregates are medians and interquartile ranges.
EnsembleResult run_ensemble(const RunConfig& base,
                            const std::vector<std::uint64_t>& seeds,
                            unsigned jobs = 0);

/// Linear-interpolation quantile of a sample (q in [0, 1]).
double quantile(std::vector<double> values, double q);

// ---- Continuum tables ----------------------------------------------------

struct ContinuumRow {
  double r = 0;
  double r_prime = 0;   // used only in pair mode
  double phi_min = 0;
  double phi_ab = 0;
  double phi_ba = 0;    // used only in pair mode
  double residual = 0;  // quadratic residual self-check
};

std::vector<ContinuumRow> continuum_symmetric_table(
    const std::vector<double>& r_grid, const std::vector<double>& phi_min_grid);

std::vector<ContinuumRow> continuum_pair_table(
    const std::vector<double>& r_grid, const std::vector<double>& phi_min_grid,
    double r_prime);

// ---- Artifact writers ------------------------------------------------------

/// metrics.csv, hist.csv, links.csv, summary.json under out_dir.
void write_run_artifacts(const RunResult& result, const RunConfig& cfg,
                         const std::filesystem::path& out_dir);

/// sweep.csv plus one hist_###.csv per grid point.
void write_sweep_artifacts(const std::vector<SweepPoint>& points,
                           const RunConfig& cfg,
                           const std::filesystem::path& out_dir);

/// ensemble.csv (per-seed rows) and ensemble.json (aggregates).
void write_ensemble_artifacts(const EnsembleResult& result,
                              const RunConfig& cfg,
                              const std::filesystem::path& out_dir);

/// continuum.csv in either symmetric or pair layout.
void write_continuum_csv(const std::vector<ContinuumRow>& rows,
                         bool pair_mode,
                         const std::filesystem::path& out_file);

}  // namespace swarmsim
