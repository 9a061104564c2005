#pragma once

#include <optional>
#include <utility>

#include "swarmsim/types.hpp"

namespace swarmsim {

/// Loss-to-gain ratio gamma / (alpha * L) for one link direction. The
/// infinite limit (no inflow at all) is a distinct state, not a sentinel
/// float.
class LossRatio {
 public:
  static LossRatio finite(double r);
  static LossRatio infinite() { return LossRatio(0.0, true); }

  bool is_infinite() const { return infinite_; }
  double value() const { return value_; }

 private:
  LossRatio(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

/// Forward and backward loss ratios for a single agent pair.
struct RatePair {
  double r = 0;        // gamma / (alpha_ba * L_ba)
  double r_prime = 0;  // gamma / (alpha_ab * L_ab)
  double phi_min = 0;
};

/// Steady-state belief accuracy given the peer's accuracy:
/// (r*phi_min + phi_peer) / (r + phi_peer). Infinite r collapses to the
/// find-by-chance floor. Throws DomainError on the 0/0 case (r = 0 with a
/// zero-accuracy peer).
double steady_state_response(double phi_peer, LossRatio r, double phi_min);

/// Positive root of phi^2 + (r-1)*phi - r*phi_min = 0, the symmetric-link
/// steady state. Exact closed forms max(1-r, 0) at phi_min = 0; always in
/// [phi_min, 1].
double steady_state_symmetric(double r, double phi_min);

/// Mutual steady state of one asymmetric link: the non-negative root of
/// [r+1]*phi^2 + [r'r + (r'-r)*phi_min - 1]*phi - r'*phi_min*[r+1] = 0
/// for the forward accuracy, with the backward accuracy recovered from the
/// response formula with roles reversed.
std::pair<double, double> steady_state_pair(const RatePair& rates);

/// Rate-equation system: per-pair transmission rates, link efficiencies,
/// and the loss parameters. alpha(a, j) is agent a's information rate
/// toward j; an optional cap bounds every row sum.
struct ContinuumSystem {
  std::size_t n = 0;
  SquareMatrix alpha;
  Environment env;
  double gamma = 0;
  double phi_min = 0;
  std::optional<double> rate_cap;

  /// Receive rate q(a, b) = alpha(b, a) * L(b, a) * phi(b, a): what agent a
  /// can gain about b per unit time.
  double receive_rate(const BeliefMatrix& beliefs, std::size_t a,
                      std::size_t b) const {
    return alpha(b, a) * env.link(b, a) * beliefs.phi(b, a);
  }

  /// Largest possible inflow coefficient alpha(b, a) * L(b, a); bounds the
  /// stable explicit step size.
  double max_inflow() const;

  void validate() const;
};

/// Explicit fixed-step integration of
///   d phi(a,b)/dt = -gamma*(phi - phi_min) + alpha(b,a)*L(b,a)*phi(b,a)*(1 - phi)
/// holding the diagonal at 1, up to t_end. Requires
/// dt * (gamma + max inflow) < 1, which keeps [phi_min, 1] forward
/// invariant; throws DomainError otherwise.
BeliefMatrix integrate_rate_equations(const ContinuumSystem& sys,
                                      BeliefMatrix phi0, double dt,
                                      double t_end);

/// Convenience wrapper: integrate until the largest per-unit-time change
/// drops below `tol`, or max_time elapses.
BeliefMatrix integrate_to_steady(const ContinuumSystem& sys,
                                 BeliefMatrix phi0, double dt,
                                 double tol = 1e-12,
                                 double max_time = 1e7);

}  // namespace swarmsim
