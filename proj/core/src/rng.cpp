#include "swarmsim/rng.hpp"

namespace swarmsim {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t absorb(std::uint64_t state, std::uint64_t word) {
  return mix64(state + kGolden + word);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t tick,
                     std::uint32_t agent, StreamPurpose purpose) {
  std::uint64_t s = mix64(seed + kGolden);
  s = absorb(s, tick);
  s = absorb(s, (static_cast<std::uint64_t>(agent) << 8) |
                    static_cast<std::uint64_t>(purpose));
  state_ = s;
}

std::uint64_t RngStream::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double RngStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::next_below(std::uint64_t bound) {
  // Rejection sampling over the largest multiple of bound.
  const std::uint64_t threshold = (0ull - bound) % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

std::int64_t RngStream::next_in_range(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next_below(span));
}

}  // namespace swarmsim
