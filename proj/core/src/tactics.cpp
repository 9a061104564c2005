#include "swarmsim/tactics.hpp"

#include <vector>

#include "swarmsim/errors.hpp"

namespace swarmsim {

TacticKind parse_tactic(const std::string& name) {
  if (name == "sequence") return TacticKind::kSequence;
  if (name == "random") return TacticKind::kRandom;
  if (name == "timer") return TacticKind::kTimer;
  if (name == "filtered") return TacticKind::kFiltered;
  if (name == "filtered+") return TacticKind::kFilteredPlus;
  if (name == "filtered++") return TacticKind::kFilteredPlusPlus;
  throw ConfigError("unknown tactic '" + name +
                    "' (expected sequence|random|timer|filtered|filtered+|"
                    "filtered++)");
}

std::string to_string(TacticKind kind) {
  switch (kind) {
    case TacticKind::kSequence: return "sequence";
    case TacticKind::kRandom: return "random";
    case TacticKind::kTimer: return "timer";
    case TacticKind::kFiltered: return "filtered";
    case TacticKind::kFilteredPlus: return "filtered+";
    case TacticKind::kFilteredPlusPlus: return "filtered++";
  }
  return "?";
}

double extra_probability(TacticKind kind) {
  switch (kind) {
    case TacticKind::kFilteredPlus: return 0.25;
    case TacticKind::kFilteredPlusPlus: return 0.5;
    default: return 0.0;
  }
}

TacticConfig TacticConfig::resolved(Tick k) const {
  TacticConfig out = *this;
  out.k_period = k;
  if (out.theta_t <= 0) out.theta_t = k;
  if (out.theta_f <= 0) out.theta_f = 4 * k;
  if (out.q_extra < 0.0) out.q_extra = extra_probability(kind);
  return out;
}

void TacticConfig::validate() const {
  if (k_period < 1) throw ConfigError("tactic config is unresolved (no K)");
  if (theta_t < 1) throw ConfigError("theta_t must be >= 1");
  if (theta_f < theta_t) throw ConfigError("theta_f must be >= theta_t");
  if (q_extra != extra_probability(kind))
    throw ConfigError("q_extra is fixed per tactic: " + to_string(kind) +
                      " requires " + std::to_string(extra_probability(kind)));
}

bool filter_check(AgentId /*agent*/, AgentId candidate, const CommLog& log,
                  Tick tick, Tick theta_f) {
  return tick - log.latest_echo[candidate] <= theta_f;
}

namespace {

/// Uniform over the N-1 agents other than `agent`.
AgentId random_other(AgentId agent, std::size_t n, RngStream& rng) {
  const auto pick = static_cast<AgentId>(rng.next_below(n - 1));
  return pick < agent ? pick : pick + 1;
}

std::optional<AgentId> sequence_target(AgentId agent, CommLog& log, Tick tick,
                                       Tick k_period) {
  const auto n = static_cast<Tick>(log.size());
  const Tick interval = (k_period + n - 2) / (n - 1);  // ceil(K/(N-1))
  if (tick % interval != static_cast<Tick>(agent) % interval)
    return std::nullopt;
  const AgentId target = static_cast<AgentId>(
      (agent + 1 + log.seq_pointer) % static_cast<AgentId>(n));
  log.seq_pointer = (log.seq_pointer + 1) % static_cast<AgentId>(n - 1);
  return target;
}

std::optional<AgentId> timer_target(AgentId agent, const CommLog& log,
                                    Tick tick, Tick theta_t, RngStream& rng) {
  const AgentId c = random_other(agent, log.size(), rng);
  if (tick - log.last_sent_to[c] >= theta_t) return c;
  return std::nullopt;
}

std::optional<AgentId> filtered_target(AgentId agent, CommLog& log, Tick tick,
                                       const TacticConfig& cfg,
                                       RngStream& rng) {
  // Draw only among links still enabled; dropped slots stay dropped.
  std::vector<AgentId> enabled;
  enabled.reserve(log.size() - 1);
  for (AgentId j = 0; j < log.size(); ++j)
    if (j != agent && log.link_enabled[j]) enabled.push_back(j);
  if (enabled.empty()) return std::nullopt;

  const AgentId c = enabled[rng.next_below(enabled.size())];
  if (tick - log.last_sent_to[c] < cfg.theta_t) return std::nullopt;
  if (filter_check(agent, c, log, tick, cfg.theta_f)) return c;
  log.link_enabled[c] = 0;  // never recovered
  return std::nullopt;
}

}  // namespace

std::optional<AgentId> select_target(AgentId agent, CommLog& log, Tick tick,
                                     const TacticConfig& cfg, RngStream& rng) {
  const std::size_t n = log.size();
  std::optional<AgentId> target;

  switch (cfg.kind) {
    case TacticKind::kSequence:
      // Cadence matches the reference rate of one message per other agent
      // per K ticks.
      return sequence_target(agent, log, tick, cfg.k_period);
    case TacticKind::kRandom: {
      const double send_prob =
          static_cast<double>(n - 1) / static_cast<double>(cfg.k_period);
      if (rng.next_unit() < send_prob) return random_other(agent, n, rng);
      return std::nullopt;
    }
    case TacticKind::kTimer:
      return timer_target(agent, log, tick, cfg.theta_t, rng);
    case TacticKind::kFiltered:
      return filtered_target(agent, log, tick, cfg, rng);
    case TacticKind::kFilteredPlus:
    case TacticKind::kFilteredPlusPlus:
      target = filtered_target(agent, log, tick, cfg, rng);
      if (!target && rng.next_unit() < cfg.q_extra) {
        // Top-up probe: any other agent, disabled links included, no timer.
        return random_other(agent, n, rng);
      }
      return target;
  }
  return std::nullopt;
}

}  // namespace swarmsim
