#include "swarmsim/world.hpp"

#include <numeric>
#include <string>
#include <utility>

#include "swarmsim/errors.hpp"
#include "swarmsim/rng.hpp"

namespace swarmsim {

std::uint64_t World::total_sent() const {
  return std::accumulate(sent.begin(), sent.end(), std::uint64_t{0});
}

std::uint64_t World::total_delivered() const {
  return std::accumulate(delivered.begin(), delivered.end(),
                         std::uint64_t{0});
}

World init_world(const SimParams& params, Environment env) {
  params.validate();
  env.validate();
  if (env.size() != params.n)
    throw ConfigError("environment is " + std::to_string(env.size()) +
                      "x" + std::to_string(env.size()) + " but params.n = " +
                      std::to_string(params.n));

  const std::size_t n = params.n;
  World w{params, std::move(env),
          BeliefMatrix::uniform(n, params.initial_belief()),
          std::vector<CommLog>(n, CommLog(n)), 0,
          std::vector<std::uint64_t>(n, 0), std::vector<std::uint64_t>(n, 0)};

  const Tick k = params.k_period;
  for (AgentId a = 0; a < n; ++a) {
    RngStream rng(params.seed, 0, a, StreamPurpose::kInitTimings);
    CommLog& log = w.logs[a];
    for (AgentId j = 0; j < n; ++j) {
      if (j == a) continue;
      log.last_sent_to[j] = rng.next_in_range(-k, 0);
      log.last_recv_from[j] = rng.next_in_range(-k, 0);
      log.latest_echo[j] = rng.next_in_range(-k, 0);
    }
  }
  return w;
}

}  // namespace swarmsim
