#include "swarmsim/engine.hpp"

#include <cmath>
#include <vector>

#include "swarmsim/tactics.hpp"

namespace swarmsim {

void loss_update(BeliefMatrix& beliefs, double gamma, double tau,
                 double phi_min) {
  const std::size_t n = beliefs.size();
  const double retain = std::exp(-gamma * tau);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      beliefs.phi(a, b) = phi_min + retain * (beliefs.phi(a, b) - phi_min);
    }
  }
}

bool attempt_delivery(const Message& msg, const Environment& env,
                      const BeliefMatrix& beliefs, RngStream& rng) {
  const double eta = rng.next_unit();
  return eta < env.link(msg.sender, msg.target) *
                   beliefs.phi(msg.sender, msg.target);
}

void apply_reception(World& world, const Message& msg) {
  world.beliefs.phi(msg.target, msg.sender) = 1.0;
  CommLog& log = world.logs[msg.target];
  log.last_recv_from[msg.sender] = world.tick;
  log.latest_echo[msg.sender] = msg.echo;
}

void step(World& world) {
  const SimParams& p = world.params;
  const TacticConfig tactic = p.resolved_tactic();
  const std::size_t n = p.n;

  loss_update(world.beliefs, p.gamma, p.tau, p.phi_min);

  // Selection sees each agent's own post-loss ledger; senders stamp their
  // own last_sent_to immediately, which no other agent reads this tick.
  std::vector<Message> outbox;
  outbox.reserve(n);
  for (AgentId a = 0; a < n; ++a) {
    RngStream rng(p.seed, static_cast<std::uint64_t>(world.tick), a,
                  StreamPurpose::kTargetSelection);
    CommLog& log = world.logs[a];
    if (auto target = select_target(a, log, world.tick, tactic, rng)) {
      outbox.push_back(
          Message{a, *target, world.tick, log.last_recv_from[*target]});
      log.last_sent_to[*target] = world.tick;
      ++world.sent[a];
    }
  }

  // Resolve all deliveries against the pre-reception beliefs, then apply.
  // Receptions write disjoint (target, sender) cells, so order is moot.
  std::vector<Message> landed;
  landed.reserve(outbox.size());
  for (const Message& msg : outbox) {
    RngStream rng(p.seed, static_cast<std::uint64_t>(world.tick), msg.sender,
                  StreamPurpose::kDelivery);
    if (attempt_delivery(msg, world.env, world.beliefs, rng)) {
      landed.push_back(msg);
      ++world.delivered[msg.sender];
    }
  }
  for (const Message& msg : landed) apply_reception(world, msg);

  ++world.tick;
}

void run(World& world, Tick ticks, std::span<Observer* const> observers) {
  for (Tick i = 0; i < ticks; ++i) {
    step(world);
    for (Observer* obs : observers) obs->on_tick(world);
  }
}

}  // namespace swarmsim
