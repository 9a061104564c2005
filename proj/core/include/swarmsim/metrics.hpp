#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swarmsim/engine.hpp"
#include "swarmsim/params.hpp"
#include "swarmsim/types.hpp"
#include "swarmsim/world.hpp"

namespace swarmsim {

/// One sampled snapshot of the swarm-level metrics.
struct MetricsFrame {
  Tick tick = 0;
  double phi_hat = 0;     // mean per-agent performance, exponent beta
  double phi_hat_t = 0;   // thresholded swarm performance
  double risk_norm = 0;   // send rate over the sample window / reference
  bool ccs = false;       // completely connected swarm this tick
  double u_r = 0;         // found accurate links / efficient links (NaN if
                          // the environment has no efficient links)
};

/// Mean of phi^beta over the whole row, self term included; lies in
/// [1/N, 1] since the diagonal contributes exactly 1.
double perf_agent(std::span<const double> phi_row, double beta);

/// Sum of above-threshold beliefs, normalised by max(count above
/// threshold, log N). The log N floor keeps an agent with a handful of
/// sharp beliefs from scoring as if it were well connected.
double perf_agent_thresholded(std::span<const double> phi_row,
                              double phi_threshold);

/// Mean of the per-agent measure over all agents.
double perf_swarm(const BeliefMatrix& beliefs, double beta,
                  double phi_threshold, bool thresholded);

struct RiskRates {
  std::vector<double> per_agent;  // xi * sends / (window * tau)
  double swarm = 0;               // sum over agents
  double normalized = 0;          // mean send rate / ((N-1)/(K*tau))
};

/// Risk accrues on transmission: message counts over a window, scaled by
/// xi. Throws DomainError on an empty window.
RiskRates risk_rates(std::span<const std::uint64_t> sent_in_window,
                     Tick window_ticks, const SimParams& params);

/// p = 1 - exp(-rate * interval).
double detection_probability(double risk_rate, double interval);

/// Best belief product over directed paths of at most max_hops edges, for
/// every ordered pair. Edge a -> b is weighted by phi(a, b), the sender's
/// targeting accuracy for the next hop; diagonal treated as 1.
SquareMatrix best_path_products(const BeliefMatrix& beliefs, int max_hops);

/// Completely connected swarm: every ordered pair reachable within
/// max_hops hops at a path product strictly above phi_threshold. Link
/// efficiencies are deliberately excluded; agents never know them.
bool ccs(const BeliefMatrix& beliefs, double phi_threshold, int max_hops);

/// Found accurate links (phi > threshold) over efficient environmental
/// links (L > threshold), off-diagonal, directed. Throws DomainError when
/// the environment has no efficient links.
double u_r(const BeliefMatrix& beliefs, const Environment& env,
           double phi_threshold);

/// Occurrence counts of off-diagonal beliefs, accumulated snapshot by
/// snapshot over uniform bins on [0, 1]. Raw counts; any display transform
/// is the consumer's business.
struct Histogram {
  explicit Histogram(std::size_t bins = 50);
  void accumulate(const BeliefMatrix& beliefs);

  std::size_t bins() const { return counts.size(); }
  std::uint64_t total() const;

  std::vector<std::uint64_t> counts;
};

/// Observer that samples frames every `sample_every` ticks, accumulates
/// the belief histogram at the same cadence, and tracks per-window send
/// counts for the normalised risk column.
class MetricsRecorder : public Observer {
 public:
  struct Options {
    Tick sample_every = 1;
    std::size_t hist_bins = 50;
  };

  MetricsRecorder(const World& world, Options options);

  void on_tick(const World& world) override;

  const std::vector<MetricsFrame>& frames() const { return frames_; }
  const Histogram& histogram() const { return hist_; }

  /// Time averages over all sampled frames; throws DomainError when
  /// nothing was sampled.
  double mean_phi_hat() const;
  double mean_phi_hat_t() const;
  double mean_risk_norm() const;
  double ccs_fraction() const;
  double final_u_r() const;

 private:
  Options opt_;
  Tick ticks_seen_ = 0;
  std::uint64_t window_sent_start_ = 0;
  bool env_has_efficient_links_ = false;
  std::vector<MetricsFrame> frames_;
  Histogram hist_;
};

}  // namespace swarmsim
