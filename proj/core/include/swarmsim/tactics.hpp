#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "swarmsim/rng.hpp"
#include "swarmsim/types.hpp"

namespace swarmsim {

enum class TacticKind {
  kSequence,
  kRandom,
  kTimer,
  kFiltered,
  kFilteredPlus,
  kFilteredPlusPlus,
};

/// Names accepted on the CLI and in config files:
/// sequence | random | timer | filtered | filtered+ | filtered++.
TacticKind parse_tactic(const std::string& name);
std::string to_string(TacticKind kind);

/// Probability of attempting an extra top-up message when the regular slot
/// stayed silent: 0 for the base tactics, 0.25 for Filtered+, 0.5 for
/// Filtered++.
double extra_probability(TacticKind kind);

struct TacticConfig {
  TacticKind kind = TacticKind::kTimer;
  Tick theta_t = 0;      // timer threshold; 0 means "use K"
  Tick theta_f = 0;      // filter threshold; 0 means "use 4K"
  double q_extra = -1.0; // extra-message probability; <0 means "per kind"
  Tick k_period = 0;     // reference period; stamped by resolved()

  /// Copy with defaults filled in from the reference period K. Sequence
  /// cadence and the Random send probability always use K itself, even
  /// when theta_t is overridden.
  TacticConfig resolved(Tick k_period) const;

  /// Throws ConfigError; expects a resolved config.
  void validate() const;
};

/// Round-trip freshness test used by the Filtered family: sending to
/// `candidate` is allowed iff the candidate's latest reported contact from
/// us is at most theta_f ticks old.
bool filter_check(AgentId agent, AgentId candidate, const CommLog& log,
                  Tick tick, Tick theta_f);

/// Choose at most one message target for this tick, using nothing but the
/// agent's own timing ledger. Returns nullopt for "stay silent".
///
/// Mutates the log only in the ways the tactics require: Sequence advances
/// its cursor, Filtered permanently clears link_enabled for condemned
/// links. Dropped slots are not redirected.
std::optional<AgentId> select_target(AgentId agent, CommLog& log, Tick tick,
                                     const TacticConfig& cfg, RngStream& rng);

}  // namespace swarmsim
