#include "swarmsim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <utility>

#include <json.hpp>

#include "swarmsim/continuum.hpp"
#include "swarmsim/engine.hpp"
#include "swarmsim/envgen.hpp"
#include "swarmsim/errors.hpp"
#include "swarmsim/parallel.hpp"

namespace swarmsim {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json json_number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw IoError("cannot write " + p.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& p) {
  out.flush();
  if (!out) throw IoError("write failed: " + p.string());
}

}  // namespace

Environment make_env(const EnvSpec& spec, std::size_t n) {
  switch (spec.kind) {
    case EnvSpec::Kind::kFlat:
      return flat_env(n, spec.l);
    case EnvSpec::Kind::kEr:
      return er_env(n, spec.p, spec.seed);
    case EnvSpec::Kind::kFile:
      return load_env(spec.file);
  }
  throw ConfigError("unknown environment kind");
}

RunResult run_single(const RunConfig& cfg) {
  cfg.params.validate();
  if (cfg.sample_every < 1) throw ConfigError("sample_every must be >= 1");

  World world = init_world(cfg.params, make_env(cfg.env, cfg.params.n));
  run(world, cfg.params.ticks_burnin);

  MetricsRecorder recorder(world, {cfg.sample_every, cfg.hist_bins});
  Observer* observers[] = {&recorder};
  run(world, cfg.params.ticks_measure, observers);

  RunSummary summary;
  if (recorder.frames().empty()) {
    summary = {kNaN, kNaN, kNaN, kNaN, kNaN};
  } else {
    summary = {recorder.mean_phi_hat(), recorder.mean_phi_hat_t(),
               recorder.mean_risk_norm(), recorder.ccs_fraction(),
               recorder.final_u_r()};
  }
  return RunResult{recorder.frames(), recorder.histogram(), summary,
                   std::move(world)};
}

std::vector<SweepPoint> run_sweep(const RunConfig& base,
                                  const std::vector<double>& gamma_bar_grid,
                                  unsigned jobs) {
  if (gamma_bar_grid.empty()) throw ConfigError("sweep grid is empty");
  return parallel_map(gamma_bar_grid.size(), jobs, [&](std::size_t i) {
    RunConfig cfg = base;
    cfg.params.set_gamma_bar(gamma_bar_grid[i]);
    RunResult r = run_single(cfg);
    const bool formed = !std::isnan(r.summary.ccs_fraction) &&
                        r.summary.ccs_fraction >= base.ccs_cutoff;
    return SweepPoint{gamma_bar_grid[i], r.summary, std::move(r.hist),
                      formed};
  });
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw DomainError("quantile of empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

namespace {
Aggregate aggregate_of(const std::vector<RunSummary>& rows,
                       double RunSummary::*field) {
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.push_back(r.*field);
  return Aggregate{quantile(v, 0.5), quantile(v, 0.75) - quantile(v, 0.25)};
}
}  // namespace

EnsembleResult run_ensemble(const RunConfig& base,
                            const std::vector<std::uint64_t>& seeds,
                            unsigned jobs) {
  if (seeds.empty()) throw ConfigError("ensemble needs at least one seed");
  EnsembleResult out;
  out.seeds = seeds;
  out.per_seed = parallel_map(seeds.size(), jobs, [&](std::size_t i) {
    RunConfig cfg = base;
    cfg.params.seed = seeds[i];
    return run_single(cfg).summary;
  });
  out.phi_hat = aggregate_of(out.per_seed, &RunSummary::phi_hat_mean);
  out.phi_hat_t = aggregate_of(out.per_seed, &RunSummary::phi_hat_t_mean);
  out.risk_norm = aggregate_of(out.per_seed, &RunSummary::risk_norm_mean);
  out.ccs_fraction = aggregate_of(out.per_seed, &RunSummary::ccs_fraction);
  out.u_r_final = aggregate_of(out.per_seed, &RunSummary::u_r_final);
  return out;
}

// ---- Continuum tables ------------------------------------------------------

std::vector<ContinuumRow> continuum_symmetric_table(
    const std::vector<double>& r_grid,
    const std::vector<double>& phi_min_grid) {
  if (r_grid.empty() || phi_min_grid.empty())
    throw ConfigError("continuum grids must be non-empty");
  std::vector<ContinuumRow> rows;
  rows.reserve(r_grid.size() * phi_min_grid.size());
  for (double r : r_grid) {
    for (double pm : phi_min_grid) {
      const double phi = steady_state_symmetric(r, pm);
      const double residual =
          std::abs(phi * phi + (r - 1.0) * phi - r * pm);
      rows.push_back({r, 0.0, pm, phi, 0.0, residual});
    }
  }
  return rows;
}

std::vector<ContinuumRow> continuum_pair_table(
    const std::vector<double>& r_grid,
    const std::vector<double>& phi_min_grid, double r_prime) {
  if (r_grid.empty() || phi_min_grid.empty())
    throw ConfigError("continuum grids must be non-empty");
  std::vector<ContinuumRow> rows;
  rows.reserve(r_grid.size() * phi_min_grid.size());
  for (double r : r_grid) {
    for (double pm : phi_min_grid) {
      const auto [ab, ba] = steady_state_pair({r, r_prime, pm});
      const double a = r + 1.0;
      const double b = r_prime * r + (r_prime - r) * pm - 1.0;
      const double c = -r_prime * pm * a;
      const double residual = std::abs(a * ab * ab + b * ab + c);
      rows.push_back({r, r_prime, pm, ab, ba, residual});
    }
  }
  return rows;
}

// ---- Config JSON ------------------------------------------------------------

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!known.count(key))
      throw ConfigError("unknown config key '" + key + "' in " + where);
  }
}

TacticConfig tactic_from_json(const json& j) {
  TacticConfig t;
  if (j.is_string()) {
    t.kind = parse_tactic(j.get<std::string>());
    return t;
  }
  if (!j.is_object()) throw ConfigError("'tactic' must be a name or object");
  reject_unknown_keys(j, {"kind", "theta_t", "theta_f", "q_extra"}, "tactic");
  if (j.contains("kind")) t.kind = parse_tactic(j.at("kind"));
  if (j.contains("theta_t")) t.theta_t = j.at("theta_t").get<Tick>();
  if (j.contains("theta_f")) t.theta_f = j.at("theta_f").get<Tick>();
  if (j.contains("q_extra")) t.q_extra = j.at("q_extra").get<double>();
  return t;
}

EnvSpec env_from_json(const json& j) {
  EnvSpec e;
  if (!j.is_object()) throw ConfigError("'env' must be an object");
  reject_unknown_keys(j, {"kind", "l", "p", "seed", "file"}, "env");
  if (j.contains("kind")) {
    const std::string kind = j.at("kind");
    if (kind == "flat") e.kind = EnvSpec::Kind::kFlat;
    else if (kind == "er") e.kind = EnvSpec::Kind::kEr;
    else if (kind == "file") e.kind = EnvSpec::Kind::kFile;
    else throw ConfigError("env kind must be flat|er|file, got '" + kind +
                           "'");
  }
  if (j.contains("l")) e.l = j.at("l").get<double>();
  if (j.contains("p")) e.p = j.at("p").get<double>();
  if (j.contains("seed")) e.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("file")) e.file = j.at("file").get<std::string>();
  return e;
}

}  // namespace

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");

  static const std::set<std::string> known = {
      "n", "tau", "k_period", "gamma", "gamma_bar", "phi_min",
      "phi_threshold", "max_hops", "xi", "beta", "tactic", "seed",
      "ticks_burnin", "ticks_measure", "phi_init", "env", "sample_every",
      "hist_bins", "ccs_cutoff", "gamma_bar_grid", "seeds", "jobs"};
  reject_unknown_keys(j, known, "config");
  if (j.contains("gamma") && j.contains("gamma_bar"))
    throw ConfigError("give either 'gamma' or 'gamma_bar', not both");

  ExperimentSpec spec;
  SimParams& p = spec.run.params;
  try {
    if (j.contains("n")) p.n = j.at("n").get<std::uint32_t>();
    if (j.contains("tau")) p.tau = j.at("tau").get<double>();
    if (j.contains("k_period")) p.k_period = j.at("k_period").get<Tick>();
    if (j.contains("gamma")) p.gamma = j.at("gamma").get<double>();
    if (j.contains("phi_min")) p.phi_min = j.at("phi_min").get<double>();
    if (j.contains("phi_threshold"))
      p.phi_threshold = j.at("phi_threshold").get<double>();
    if (j.contains("max_hops")) p.max_hops = j.at("max_hops").get<int>();
    if (j.contains("xi")) p.xi = j.at("xi").get<double>();
    if (j.contains("beta")) p.beta = j.at("beta").get<double>();
    if (j.contains("tactic")) p.tactic = tactic_from_json(j.at("tactic"));
    if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("ticks_burnin"))
      p.ticks_burnin = j.at("ticks_burnin").get<Tick>();
    if (j.contains("ticks_measure"))
      p.ticks_measure = j.at("ticks_measure").get<Tick>();
    if (j.contains("phi_init")) p.phi_init = j.at("phi_init").get<double>();
    if (j.contains("gamma_bar"))
      p.set_gamma_bar(j.at("gamma_bar").get<double>());
    if (j.contains("env")) spec.run.env = env_from_json(j.at("env"));
    if (j.contains("sample_every"))
      spec.run.sample_every = j.at("sample_every").get<Tick>();
    if (j.contains("hist_bins"))
      spec.run.hist_bins = j.at("hist_bins").get<std::size_t>();
    if (j.contains("ccs_cutoff"))
      spec.run.ccs_cutoff = j.at("ccs_cutoff").get<double>();
    if (j.contains("gamma_bar_grid"))
      spec.gamma_bar_grid =
          j.at("gamma_bar_grid").get<std::vector<double>>();
    if (j.contains("seeds"))
      spec.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("jobs")) spec.jobs = j.at("jobs").get<unsigned>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return spec;
}

namespace {

json config_json(const RunConfig& cfg) {
  const TacticConfig t = cfg.params.resolved_tactic();
  json env;
  switch (cfg.env.kind) {
    case EnvSpec::Kind::kFlat:
      env = {{"kind", "flat"}, {"l", cfg.env.l}};
      break;
    case EnvSpec::Kind::kEr:
      env = {{"kind", "er"}, {"p", cfg.env.p}, {"seed", cfg.env.seed}};
      break;
    case EnvSpec::Kind::kFile:
      env = {{"kind", "file"}, {"file", cfg.env.file}};
      break;
  }
  json out = {
      {"n", cfg.params.n},
      {"tau", cfg.params.tau},
      {"k_period", cfg.params.k_period},
      {"gamma", cfg.params.gamma},
      {"gamma_bar", cfg.params.gamma_bar()},
      {"phi_min", cfg.params.phi_min},
      {"phi_threshold", cfg.params.phi_threshold},
      {"max_hops", cfg.params.max_hops},
      {"xi", cfg.params.xi},
      {"beta", cfg.params.beta},
      {"tactic",
       {{"kind", to_string(t.kind)},
        {"theta_t", t.theta_t},
        {"theta_f", t.theta_f},
        {"q_extra", t.q_extra}}},
      {"seed", cfg.params.seed},
      {"ticks_burnin", cfg.params.ticks_burnin},
      {"ticks_measure", cfg.params.ticks_measure},
      {"phi_init", cfg.params.initial_belief()},
      {"env", env},
      {"sample_every", cfg.sample_every},
      {"hist_bins", cfg.hist_bins},
      {"ccs_cutoff", cfg.ccs_cutoff},
  };
  return out;
}

}  // namespace

std::string run_config_to_json(const RunConfig& cfg) {
  return config_json(cfg).dump(2);
}

// ---- Artifact writers -------------------------------------------------------

void write_run_artifacts(const RunResult& result, const RunConfig& cfg,
                         const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string());

  {
    auto path = out_dir / "metrics.csv";
    auto out = open_out(path);
    out << "tick,phi_hat,phi_hat_t,risk_norm,ccs,u_r\n";
    for (const auto& f : result.frames) {
      out << f.tick << ',' << fmt(f.phi_hat) << ',' << fmt(f.phi_hat_t)
          << ',' << fmt(f.risk_norm) << ',' << (f.ccs ? 1 : 0) << ','
          << fmt(f.u_r) << '\n';
    }
    finish(out, path);
  }
  {
    auto path = out_dir / "hist.csv";
    auto out = open_out(path);
    out << "bin_lo,bin_hi,count\n";
    const auto bins = static_cast<double>(result.hist.bins());
    for (std::size_t i = 0; i < result.hist.bins(); ++i) {
      out << fmt(static_cast<double>(i) / bins) << ','
          << fmt(static_cast<double>(i + 1) / bins) << ','
          << result.hist.counts[i] << '\n';
    }
    finish(out, path);
  }
  {
    auto path = out_dir / "links.csv";
    auto out = open_out(path);
    out << "i,j,l_ij,phi_ij,link_enabled\n";
    const World& w = result.final_world;
    for (std::size_t i = 0; i < w.env.size(); ++i) {
      for (std::size_t j = 0; j < w.env.size(); ++j) {
        if (i == j) continue;
        out << i << ',' << j << ',' << fmt(w.env.link(i, j)) << ','
            << fmt(w.beliefs.phi(i, j)) << ','
            << int(w.logs[i].link_enabled[j]) << '\n';
      }
    }
    finish(out, path);
  }
  {
    auto path = out_dir / "summary.json";
    auto out = open_out(path);
    json summary = {
        {"seed", cfg.params.seed},
        {"phi_hat_mean", json_number_or_null(result.summary.phi_hat_mean)},
        {"phi_hat_t_mean",
         json_number_or_null(result.summary.phi_hat_t_mean)},
        {"risk_norm_mean",
         json_number_or_null(result.summary.risk_norm_mean)},
        {"ccs_fraction", json_number_or_null(result.summary.ccs_fraction)},
        {"u_r_final", json_number_or_null(result.summary.u_r_final)},
        {"config", config_json(cfg)},
    };
    out << summary.dump(2) << '\n';
    finish(out, path);
  }
}

void write_sweep_artifacts(const std::vector<SweepPoint>& points,
                           const RunConfig& cfg,
                           const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string());

  auto path = out_dir / "sweep.csv";
  auto out = open_out(path);
  out << "gamma_bar,phi_hat,phi_hat_t,risk_norm,ccs_fraction,u_r_final,"
         "ccs_formed\n";
  for (const auto& p : points) {
    out << fmt(p.gamma_bar) << ',' << fmt(p.summary.phi_hat_mean) << ','
        << fmt(p.summary.phi_hat_t_mean) << ','
        << fmt(p.summary.risk_norm_mean) << ','
        << fmt(p.summary.ccs_fraction) << ',' << fmt(p.summary.u_r_final)
        << ',' << (p.ccs_formed ? 1 : 0) << '\n';
  }
  finish(out, path);

  char name[32];
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::snprintf(name, sizeof name, "hist_%03zu.csv", i);
    auto hist_path = out_dir / name;
    auto hist_out = open_out(hist_path);
    hist_out << "gamma_bar,bin_lo,bin_hi,count\n";
    const auto bins = static_cast<double>(points[i].hist.bins());
    for (std::size_t b = 0; b < points[i].hist.bins(); ++b) {
      hist_out << fmt(points[i].gamma_bar) << ','
               << fmt(static_cast<double>(b) / bins) << ','
               << fmt(static_cast<double>(b + 1) / bins) << ','
               << points[i].hist.counts[b] << '\n';
    }
    finish(hist_out, hist_path);
  }
  (void)cfg;
}

void write_ensemble_artifacts(const EnsembleResult& result,
                              const RunConfig& cfg,
                              const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string());

  {
    auto path = out_dir / "ensemble.csv";
    auto out = open_out(path);
    out << "seed,phi_hat,phi_hat_t,risk_norm,ccs_fraction,u_r_final\n";
    for (std::size_t i = 0; i < result.seeds.size(); ++i) {
      const RunSummary& s = result.per_seed[i];
      out << result.seeds[i] << ',' << fmt(s.phi_hat_mean) << ','
          << fmt(s.phi_hat_t_mean) << ',' << fmt(s.risk_norm_mean) << ','
          << fmt(s.ccs_fraction) << ',' << fmt(s.u_r_final) << '\n';
    }
    finish(out, path);
  }
  {
    auto path = out_dir / "ensemble.json";
    auto out = open_out(path);
    auto agg = [](const Aggregate& a) {
      return json{{"median", json_number_or_null(a.median)},
                  {"iqr", json_number_or_null(a.iqr)}};
    };
    json doc = {
        {"seeds", result.seeds},
        {"aggregate",
         {{"phi_hat", agg(result.phi_hat)},
          {"phi_hat_t", agg(result.phi_hat_t)},
          {"risk_norm", agg(result.risk_norm)},
          {"ccs_fraction", agg(result.ccs_fraction)},
          {"u_r_final", agg(result.u_r_final)}}},
        {"config", config_json(cfg)},
    };
    out << doc.dump(2) << '\n';
    finish(out, path);
  }
}

void write_continuum_csv(const std::vector<ContinuumRow>& rows,
                         bool pair_mode,
                         const std::filesystem::path& out_file) {
  if (out_file.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(out_file.parent_path(), ec);
    if (ec) throw IoError("cannot create " + out_file.parent_path().string());
  }
  auto out = open_out(out_file);
  if (pair_mode) {
    out << "r,r_prime,phi_min,phi_ab,phi_ba,residual\n";
    for (const auto& row : rows)
      out << fmt(row.r) << ',' << fmt(row.r_prime) << ',' << fmt(row.phi_min)
          << ',' << fmt(row.phi_ab) << ',' << fmt(row.phi_ba) << ','
          << fmt(row.residual) << '\n';
  } else {
    out << "r,phi_min,phi,residual\n";
    for (const auto& row : rows)
      out << fmt(row.r) << ',' << fmt(row.phi_min) << ',' << fmt(row.phi_ab)
          << ',' << fmt(row.residual) << '\n';
  }
  finish(out, out_file);
}

}  // namespace swarmsim
