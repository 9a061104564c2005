#include "swarmsim/continuum.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "swarmsim/errors.hpp"

namespace swarmsim {

LossRatio LossRatio::finite(double r) {
  if (!(r >= 0.0))
    throw DomainError("loss ratio must be >= 0, got " + std::to_string(r));
  return LossRatio(r, false);
}

double steady_state_response(double phi_peer, LossRatio r, double phi_min) {
  if (r.is_infinite()) return phi_min;  // only find-by-chance remains
  const double rv = r.value();
  if (rv == 0.0 && phi_peer == 0.0)
    throw DomainError(
        "steady state undefined: no losses and no inflow (0/0)");
  return (rv * phi_min + phi_peer) / (rv + phi_peer);
}

double steady_state_symmetric(double r, double phi_min) {
  if (!(r >= 0.0)) throw DomainError("loss ratio must be >= 0");
  if (!(phi_min >= 0.0 && phi_min <= 1.0))
    throw DomainError("phi_min must lie in [0, 1]");
  if (phi_min == 0.0) return std::max(1.0 - r, 0.0);

  const double disc = r * r - 2.0 * r * (1.0 - 2.0 * phi_min) + 1.0;
  assert(disc >= 0.0);  // provable on r >= 0, phi_min in [0,1]
  return 0.5 * (1.0 - r) + 0.5 * std::sqrt(disc);
}

std::pair<double, double> steady_state_pair(const RatePair& rates) {
  const double r = rates.r;
  const double rp = rates.r_prime;
  const double pm = rates.phi_min;
  if (!(r >= 0.0 && rp >= 0.0))
    throw DomainError("loss ratios must be >= 0");

  const double a = r + 1.0;  // leading coefficient, always >= 1
  const double b = rp * r + (rp - r) * pm - 1.0;
  const double c = -rp * pm * a;
  // c <= 0, so the roots straddle zero; the "+" root is the valid one
  // (the other is pushed negative for phi_min > 0).
  const double disc = b * b - 4.0 * a * c;
  assert(disc >= 0.0);
  const double phi_forward = (-b + std::sqrt(disc)) / (2.0 * a);

  // rp = 0 forces a strictly positive forward root, so the reversed
  // response below never hits the 0/0 case.
  const double phi_backward =
      steady_state_response(phi_forward, LossRatio::finite(rp), pm);
  return {phi_forward, phi_backward};
}

double ContinuumSystem::max_inflow() const {
  double best = 0.0;
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t a = 0; a < n; ++a)
      if (a != b) best = std::max(best, alpha(b, a) * env.link(b, a));
  return best;
}

void ContinuumSystem::validate() const {
  if (alpha.size() != n || env.size() != n)
    throw ConfigError("continuum system dimensions disagree");
  if (gamma < 0.0) throw ConfigError("gamma must be >= 0");
  if (!(phi_min >= 0.0 && phi_min <= 1.0))
    throw ConfigError("phi_min must lie in [0, 1]");
  for (std::size_t a = 0; a < n; ++a) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (alpha(a, j) < 0.0)
        throw ConfigError("alpha(" + std::to_string(a) + "," +
                          std::to_string(j) + ") must be >= 0");
      if (a != j) row_sum += alpha(a, j);
    }
    if (rate_cap && row_sum > *rate_cap * (1.0 + 1e-12))
      throw ConfigError("agent " + std::to_string(a) +
                        " exceeds the total transmission rate cap");
  }
  env.validate();
}

BeliefMatrix integrate_rate_equations(const ContinuumSystem& sys,
                                      BeliefMatrix phi0, double dt,
                                      double t_end) {
  sys.validate();
  if (!(dt > 0.0)) throw DomainError("dt must be > 0");
  if (dt * (sys.gamma + sys.max_inflow()) >= 1.0)
    throw DomainError("unstable step: need dt * (gamma + max inflow) < 1");

  const std::size_t n = sys.n;
  BeliefMatrix state = std::move(phi0);
  BeliefMatrix next = state;
  const auto steps = static_cast<long long>(std::ceil(t_end / dt - 1e-12));
  for (long long s = 0; s < steps; ++s) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const double phi = state.phi(a, b);
        const double gain = sys.receive_rate(state, a, b) * (1.0 - phi);
        const double loss = sys.gamma * (phi - sys.phi_min);
        next.phi(a, b) = phi + dt * (gain - loss);
      }
    }
    std::swap(state, next);
  }
  return state;
}

BeliefMatrix integrate_to_steady(const ContinuumSystem& sys,
                                 BeliefMatrix phi0, double dt, double tol,
                                 double max_time) {
  sys.validate();
  if (!(dt > 0.0)) throw DomainError("dt must be > 0");
  if (dt * (sys.gamma + sys.max_inflow()) >= 1.0)
    throw DomainError("unstable step: need dt * (gamma + max inflow) < 1");

  const std::size_t n = sys.n;
  BeliefMatrix state = std::move(phi0);
  BeliefMatrix next = state;
  for (double t = 0.0; t < max_time; t += dt) {
    double max_change = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const double phi = state.phi(a, b);
        const double gain = sys.receive_rate(state, a, b) * (1.0 - phi);
        const double loss = sys.gamma * (phi - sys.phi_min);
        const double delta = dt * (gain - loss);
        next.phi(a, b) = phi + delta;
        max_change = std::max(max_change, std::abs(delta));
      }
    }
    std::swap(state, next);
    if (max_change < tol * dt) break;
  }
  return state;
}

}  // namespace swarmsim
