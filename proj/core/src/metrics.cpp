#include "swarmsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "swarmsim/errors.hpp"

namespace swarmsim {

double perf_agent(std::span<const double> phi_row, double beta) {
  double sum = 0.0;
  for (double v : phi_row) sum += std::pow(v, beta);
  return sum / static_cast<double>(phi_row.size());
}

double perf_agent_thresholded(std::span<const double> phi_row,
                              double phi_threshold) {
  double sum = 0.0;
  std::size_t above = 0;
  for (double v : phi_row) {
    if (v > phi_threshold) {
      sum += v;
      ++above;
    }
  }
  const double norm = std::max(static_cast<double>(above),
                               std::log(static_cast<double>(phi_row.size())));
  return sum / norm;
}

double perf_swarm(const BeliefMatrix& beliefs, double beta,
                  double phi_threshold, bool thresholded) {
  const std::size_t n = beliefs.size();
  double sum = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    sum += thresholded
               ? perf_agent_thresholded(beliefs.phi.row(a), phi_threshold)
               : perf_agent(beliefs.phi.row(a), beta);
  }
  return sum / static_cast<double>(n);
}

RiskRates risk_rates(std::span<const std::uint64_t> sent_in_window,
                     Tick window_ticks, const SimParams& params) {
  if (window_ticks < 1) throw DomainError("risk window must span >= 1 tick");
  const double window_time = static_cast<double>(window_ticks) * params.tau;

  RiskRates out;
  out.per_agent.reserve(sent_in_window.size());
  double mean_rate = 0.0;
  for (std::uint64_t sent : sent_in_window) {
    const double rate = static_cast<double>(sent) / window_time;
    out.per_agent.push_back(params.xi * rate);
    out.swarm += params.xi * rate;
    mean_rate += rate;
  }
  mean_rate /= static_cast<double>(sent_in_window.size());

  const double reference = static_cast<double>(params.n - 1) /
                           (static_cast<double>(params.k_period) * params.tau);
  out.normalized = mean_rate / reference;
  return out;
}

double detection_probability(double risk_rate, double interval) {
  return 1.0 - std::exp(-risk_rate * interval);
}

SquareMatrix best_path_products(const BeliefMatrix& beliefs, int max_hops) {
  const std::size_t n = beliefs.size();
  // One-hop weights with the diagonal pinned at 1; max-product composition
  // with this matrix extends the hop budget by one while keeping every
  // shorter path in play.
  SquareMatrix one_hop(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      one_hop(i, j) = i == j ? 1.0 : beliefs.phi(i, j);

  SquareMatrix best = one_hop;
  for (int hop = 1; hop < max_hops; ++hop) {
    SquareMatrix next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        const double via = best(i, k);
        if (via == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j)
          next(i, j) = std::max(next(i, j), via * one_hop(k, j));
      }
    }
    best = next;
  }
  return best;
}

bool ccs(const BeliefMatrix& beliefs, double phi_threshold, int max_hops) {
  const SquareMatrix best = best_path_products(beliefs, max_hops);
  const std::size_t n = beliefs.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && !(best(a, b) > phi_threshold)) return false;
  return true;
}

double u_r(const BeliefMatrix& beliefs, const Environment& env,
           double phi_threshold) {
  const std::size_t n = beliefs.size();
  std::size_t found = 0;
  std::size_t efficient = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (beliefs.phi(i, j) > phi_threshold) ++found;
      if (env.link(i, j) > phi_threshold) ++efficient;
    }
  }
  if (efficient == 0)
    throw DomainError("environment has no efficient links above threshold");
  return static_cast<double>(found) / static_cast<double>(efficient);
}

Histogram::Histogram(std::size_t bins) : counts(bins, 0) {
  if (bins < 2) throw DomainError("histogram needs >= 2 bins");
}

void Histogram::accumulate(const BeliefMatrix& beliefs) {
  const std::size_t n = beliefs.size();
  const auto nbins = counts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto bin = std::min(
          static_cast<std::size_t>(beliefs.phi(i, j) *
                                   static_cast<double>(nbins)),
          nbins - 1);
      ++counts[bin];
    }
  }
}

std::uint64_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

MetricsRecorder::MetricsRecorder(const World& world, Options options)
    : opt_(options),
      window_sent_start_(world.total_sent()),
      hist_(options.hist_bins) {
  const double t = world.params.phi_threshold;
  const std::size_t n = world.env.size();
  for (std::size_t i = 0; i < n && !env_has_efficient_links_; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && world.env.link(i, j) > t) {
        env_has_efficient_links_ = true;
        break;
      }
}

void MetricsRecorder::on_tick(const World& world) {
  ++ticks_seen_;
  if (ticks_seen_ % opt_.sample_every != 0) return;

  const SimParams& p = world.params;
  MetricsFrame frame;
  frame.tick = world.tick;
  frame.phi_hat = perf_swarm(world.beliefs, p.beta, p.phi_threshold, false);
  frame.phi_hat_t = perf_swarm(world.beliefs, p.beta, p.phi_threshold, true);

  const std::uint64_t sent_now = world.total_sent();
  const double window_time =
      static_cast<double>(opt_.sample_every) * p.tau;
  const double mean_rate =
      static_cast<double>(sent_now - window_sent_start_) /
      (window_time * static_cast<double>(p.n));
  const double reference = static_cast<double>(p.n - 1) /
                           (static_cast<double>(p.k_period) * p.tau);
  frame.risk_norm = mean_rate / reference;
  window_sent_start_ = sent_now;

  frame.ccs = ccs(world.beliefs, p.phi_threshold, p.max_hops);
  frame.u_r = env_has_efficient_links_
                  ? u_r(world.beliefs, world.env, p.phi_threshold)
                  : std::numeric_limits<double>::quiet_NaN();

  hist_.accumulate(world.beliefs);
  frames_.push_back(frame);
}

namespace {
double mean_over(const std::vector<MetricsFrame>& frames,
                 double (*pick)(const MetricsFrame&)) {
  if (frames.empty()) throw DomainError("no frames sampled");
  double sum = 0.0;
  for (const auto& f : frames) sum += pick(f);
  return sum / static_cast<double>(frames.size());
}
}  // namespace

double MetricsRecorder::mean_phi_hat() const {
  return mean_over(frames_, [](const MetricsFrame& f) { return f.phi_hat; });
}

double MetricsRecorder::mean_phi_hat_t() const {
  return mean_over(frames_,
                   [](const MetricsFrame& f) { return f.phi_hat_t; });
}

double MetricsRecorder::mean_risk_norm() const {
  return mean_over(frames_,
                   [](const MetricsFrame& f) { return f.risk_norm; });
}

double MetricsRecorder::ccs_fraction() const {
  return mean_over(frames_,
                   [](const MetricsFrame& f) { return f.ccs ? 1.0 : 0.0; });
}

double MetricsRecorder::final_u_r() const {
  if (frames_.empty()) throw DomainError("no frames sampled");
  return frames_.back().u_r;
}

}  // namespace swarmsim
