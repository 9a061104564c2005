#pragma once

#include <cstdint>

namespace swarmsim {

/// What a stream of random draws is used for. Streams with different
/// purposes are disjoint by construction, so e.g. adding a tactic draw for
/// one agent can never perturb the reception outcomes of any other agent.
enum class StreamPurpose : std::uint64_t {
  kInitTimings = 1,
  kTargetSelection = 2,
  kDelivery = 3,
  kEnvGen = 4,
};

/// Counter-based random stream keyed by (seed, tick, agent, purpose).
///
/// The key is absorbed into a 64-bit state with a splitmix64-style hash
/// chain; successive draws advance the state by the golden-ratio increment
/// and mix. This gives bit-identical sequences on every platform and lets
/// the engine open an independent stream for any (tick, agent, purpose)
/// triple without coordination, which is what makes identical
/// (seed, params, environment) runs reproduce exactly.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t tick, std::uint32_t agent,
            StreamPurpose purpose);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1).
  double next_unit();

  /// Unbiased uniform integer in [0, bound); bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound);

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t next_in_range(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_;
};

}  // namespace swarmsim
