#include "swarmsim/params.hpp"

#include <string>

#include "swarmsim/errors.hpp"

namespace swarmsim {

void SimParams::validate() const {
  if (n < 2) throw ConfigError("need at least 2 agents, got " +
                               std::to_string(n));
  if (tau <= 0.0) throw ConfigError("tau must be > 0");
  if (k_period <= static_cast<Tick>(n))
    throw ConfigError("K must exceed N to sustain the reference rate (K=" +
                      std::to_string(k_period) + ", N=" + std::to_string(n) +
                      ")");
  if (gamma < 0.0) throw ConfigError("gamma must be >= 0");
  if (!(phi_min >= 0.0 && phi_min < phi_threshold && phi_threshold <= 1.0))
    throw ConfigError("need 0 <= phi_min < phi_threshold <= 1");
  if (max_hops < 1) throw ConfigError("max_hops must be >= 1");
  if (xi < 0.0) throw ConfigError("xi must be >= 0");
  if (beta < 1.0) throw ConfigError("beta must be >= 1");
  if (ticks_burnin < 0 || ticks_measure < 0)
    throw ConfigError("tick counts must be >= 0");
  if (phi_init && (*phi_init < phi_min || *phi_init > 1.0))
    throw ConfigError("phi_init must lie in [phi_min, 1]");
  resolved_tactic().validate();
}

}  // namespace swarmsim
