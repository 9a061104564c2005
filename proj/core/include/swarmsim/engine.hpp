#pragma once

#include <span>

#include "swarmsim/rng.hpp"
#include "swarmsim/types.hpp"
#include "swarmsim/world.hpp"

namespace swarmsim {

/// Exponential relaxation of every off-diagonal belief toward the floor:
/// phi <- phi_min + exp(-gamma*tau) * (phi - phi_min). The floor is an
/// exact fixed point; diagonal entries are untouched.
void loss_update(BeliefMatrix& beliefs, double gamma, double tau,
                 double phi_min);

/// Reception filter: one uniform draw eta on [0,1); the message lands iff
/// eta < link(sender, target) * phi(sender, target), i.e. link efficiency
/// times the sender's targeting accuracy.
bool attempt_delivery(const Message& msg, const Environment& env,
                      const BeliefMatrix& beliefs, RngStream& rng);

/// Apply a successful reception: the target now knows the sender perfectly
/// (phi(target, sender) = 1) and records the reception time plus the echo
/// carried by the message. No other agent's state is touched.
void apply_reception(World& world, const Message& msg);

/// Advance one tick: (1) loss update, (2) every agent picks at most one
/// target from its own pre-send ledger, (3) all messages resolve against
/// the post-loss, pre-reception beliefs (simultaneous sends), then
/// successful ones apply. Agent iteration order cannot affect the outcome.
void step(World& world);

/// Called after every tick; samplers decide their own cadence.
class Observer {
 public:
  virtual ~Observer() = default;
  virtual void on_tick(const World& world) = 0;
};

/// Run `ticks` steps, notifying each observer after every step.
void run(World& world, Tick ticks, std::span<Observer* const> observers = {});

}  // namespace swarmsim
