#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace swarmsim {

using AgentId = std::uint32_t;
using Tick = std::int64_t;

/// Dense row-major N x N matrix of doubles.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  SquareMatrix(std::size_t n, double fill)
      : n_(n), cells_(n * n, fill) {}

  std::size_t size() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const {
    return cells_[i * n_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return cells_[i * n_ + j];
  }

  std::span<const double> row(std::size_t i) const {
    return {cells_.data() + i * n_, n_};
  }

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> cells_;
};

/// Targeting accuracies phi(a, b): row a holds agent a's beliefs about every
/// other agent. Diagonal entries are pinned at 1 (an agent always knows
/// itself); off-diagonals live in [floor, 1].
struct BeliefMatrix {
  SquareMatrix phi;

  /// All off-diagonal entries set to `off_diagonal`, diagonal set to 1.
  static BeliefMatrix uniform(std::size_t n, double off_diagonal);

  std::size_t size() const { return phi.size(); }

  /// Throws DomainError if any entry violates [floor, 1] or a diagonal
  /// entry is not exactly 1.
  void check_bounds(double floor) const;

  bool operator==(const BeliefMatrix&) const = default;
};

/// Link efficiencies link(a, b) in [0, 1] for a -> b transmissions. Not
/// known to any agent. Asymmetric matrices are allowed; the diagonal is
/// unused and stored as 1.
struct Environment {
  SquareMatrix link;

  static Environment uniform(std::size_t n, double off_diagonal);

  std::size_t size() const { return link.size(); }

  /// Throws ConfigError on out-of-range entries, naming the cell.
  void validate() const;

  bool operator==(const Environment&) const = default;
};

/// One agent's timing ledger: the only state a tactic may consult.
struct CommLog {
  std::vector<Tick> last_sent_to;    // my last transmission aimed at j
  std::vector<Tick> last_recv_from;  // my last successful reception from j
  std::vector<Tick> latest_echo;     // j's report of when j last heard me
  std::vector<std::uint8_t> link_enabled;  // cleared forever by Filtered
  std::uint32_t seq_pointer = 0;           // Sequence tactic cursor

  explicit CommLog(std::size_t n = 0)
      : last_sent_to(n, 0),
        last_recv_from(n, 0),
        latest_echo(n, 0),
        link_enabled(n, 1) {}

  std::size_t size() const { return last_sent_to.size(); }

  bool operator==(const CommLog&) const = default;
};

/// A single discrete transmission. The echo is the sender's
/// last_recv_from[target] at send time; it lets the receiver judge the
/// round-trip freshness of the link.
struct Message {
  AgentId sender = 0;
  AgentId target = 0;
  Tick sent_tick = 0;
  Tick echo = 0;
};

}  // namespace swarmsim
