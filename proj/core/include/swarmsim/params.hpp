#pragma once

#include <cstdint>
#include <optional>

#include "swarmsim/tactics.hpp"
#include "swarmsim/types.hpp"

namespace swarmsim {

/// Full simulation configuration. K must exceed N so the reference rate of
/// one message per other agent per K ticks is sustainable under the
/// one-message-per-tick cap.
struct SimParams {
  std::uint32_t n = 20;          // agent count
  double tau = 1.0;              // tick duration
  Tick k_period = 200;           // K, ticks per reference messaging cycle
  double gamma = 0.0;            // belief decay rate (1/time)
  double phi_min = 0.0;          // find-by-chance floor
  double phi_threshold = 0.75;   // accurate-targeting threshold
  int max_hops = 3;              // CCS hop bound
  double xi = 1.0;               // risk coefficient
  double beta = 1.0;             // performance exponent
  TacticConfig tactic;
  std::uint64_t seed = 0;
  Tick ticks_burnin = 10000;
  Tick ticks_measure = 20000;

  /// Initial off-diagonal belief. Defaults to the floor; simulations of
  /// zero-floor environments need a fully-informed start (all-floor beliefs
  /// are an absorbing state when phi_min is 0, since delivery probability
  /// scales with the sender's belief).
  std::optional<double> phi_init;

  double initial_belief() const { return phi_init.value_or(phi_min); }

  /// Normalised loss ratio, the user-facing knob of all sweep figures.
  double gamma_bar() const {
    return gamma * tau * static_cast<double>(k_period);
  }
  void set_gamma_bar(double gbar) {
    gamma = gbar / (tau * static_cast<double>(k_period));
  }

  /// Tactic config with K-derived defaults filled in.
  TacticConfig resolved_tactic() const { return tactic.resolved(k_period); }

  /// Throws ConfigError on any violated invariant.
  void validate() const;
};

}  // namespace swarmsim
