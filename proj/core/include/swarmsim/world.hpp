#pragma once

#include <cstdint>
#include <vector>

#include "swarmsim/params.hpp"
#include "swarmsim/types.hpp"

namespace swarmsim {

/// Complete mutable simulation state. Distinct worlds share nothing, so
/// ensemble members can run on separate threads freely.
struct World {
  SimParams params;
  Environment env;
  BeliefMatrix beliefs;
  std::vector<CommLog> logs;  // one ledger per agent
  Tick tick = 0;

  // Cumulative per-agent message counters; delivered[a] counts a's own
  // transmissions that passed the reception filter, so delivered <= sent.
  std::vector<std::uint64_t> sent;
  std::vector<std::uint64_t> delivered;

  std::uint64_t total_sent() const;
  std::uint64_t total_delivered() const;
};

/// Build the initial world: beliefs at the configured initial value with a
/// unit diagonal, every link enabled, and all timing ledger entries drawn
/// uniformly from [-K, 0] so each link looks recently active.
///
/// Throws ConfigError on params violations or if env.n != params.n.
World init_world(const SimParams& params, Environment env);

}  // namespace swarmsim
