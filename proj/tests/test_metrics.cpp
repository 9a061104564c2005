#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "swarmsim/envgen.hpp"
#include "swarmsim/errors.hpp"
#include "swarmsim/metrics.hpp"
#include "swarmsim/rng.hpp"

using namespace swarmsim;

namespace {

// Exhaustive walk enumeration up to max_hops edges; independent of the
// max-product composition it checks.
double brute_force_best_path(const BeliefMatrix& b, std::size_t from,
                             std::size_t to, int max_hops) {
  const std::size_t n = b.size();
  double best = 0.0;
  // 1 hop
  best = std::max(best, b.phi(from, to));
  if (max_hops >= 2) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k == from || k == to) continue;
      best = std::max(best, b.phi(from, k) * b.phi(k, to));
      if (max_hops >= 3) {
        for (std::size_t l = 0; l < n; ++l) {
          if (l == from || l == to || l == k) continue;
          best = std::max(best,
                          b.phi(from, k) * b.phi(k, l) * b.phi(l, to));
        }
      }
    }
  }
  return best;
}

BeliefMatrix random_beliefs(std::size_t n, std::uint64_t seed) {
  BeliefMatrix b = BeliefMatrix::uniform(n, 0.0);
  RngStream rng(seed, 0, 0, StreamPurpose::kEnvGen);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) b.phi(i, j) = rng.next_unit();
  return b;
}

SimParams reference_params() {
  SimParams p;
  p.n = 20;
  p.k_period = 200;
  p.phi_min = 0.1;
  return p;
}

}  // namespace

TEST_CASE("perf_agent examples") {
  const std::array<double, 2> all_one{1.0, 1.0};
  CHECK(perf_agent(all_one, 1.0) == 1.0);

  const std::array<double, 2> row{1.0, 0.5};
  CHECK(perf_agent(row, 1.0) == doctest::Approx(0.75).epsilon(1e-12));
  // beta = 2 de-emphasises the inaccurate half: (1 + 0.25) / 2.
  CHECK(perf_agent(row, 2.0) == doctest::Approx(0.625).epsilon(1e-12));
}

TEST_CASE("perf_agent_thresholded examples") {
  std::vector<double> row(20, 1.0);
  CHECK(perf_agent_thresholded(row, 0.75) == doctest::Approx(1.0));

  // Self plus five links at 0.9, the rest at the floor:
  // (1 + 4.5) / max(6, log 20) = 5.5 / 6.
  row.assign(20, 0.1);
  row[0] = 1.0;
  for (int j = 1; j <= 5; ++j) row[j] = 0.9;
  CHECK(perf_agent_thresholded(row, 0.75) ==
        doctest::Approx(5.5 / 6.0).epsilon(1e-12));

  // Only the self term above threshold: 1 / max(1, log 20); the log-N
  // floor penalises the isolated agent.
  row.assign(20, 0.1);
  row[0] = 1.0;
  CHECK(perf_agent_thresholded(row, 0.75) ==
        doctest::Approx(1.0 / std::log(20.0)).epsilon(1e-12));
}

TEST_CASE("threshold comparison is strict") {
  const std::array<double, 4> row{1.0, 0.75, 0.7501, 0.1};
  // 0.75 itself is excluded: (1 + 0.7501) / max(2, log 4).
  CHECK(perf_agent_thresholded(row, 0.75) ==
        doctest::Approx((1.0 + 0.7501) / 2.0).epsilon(1e-12));
}

TEST_CASE("perf_swarm equals the per-agent value on identical rows") {
  BeliefMatrix b = BeliefMatrix::uniform(5, 0.6);
  const double agent = perf_agent(b.phi.row(0), 1.0);
  CHECK(perf_swarm(b, 1.0, 0.75, false) ==
        doctest::Approx(agent).epsilon(1e-12));
}

TEST_CASE("perf_swarm with beta 1 is the plain mean of all entries") {
  const BeliefMatrix b = random_beliefs(7, 11);
  double mean = 0.0;
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) mean += b.phi(i, j);
  mean /= 49.0;
  CHECK(perf_swarm(b, 1.0, 0.75, false) ==
        doctest::Approx(mean).epsilon(1e-12));
}

TEST_CASE("risk_rates counts messages against the reference rate") {
  SimParams p = reference_params();

  SUBCASE("no messages, no risk") {
    const std::vector<std::uint64_t> sent(20, 0);
    const RiskRates r = risk_rates(sent, 1000, p);
    CHECK(r.swarm == 0.0);
    CHECK(r.normalized == 0.0);
  }
  SUBCASE("exactly the reference rate normalises to 1") {
    const std::vector<std::uint64_t> sent(20, 19);  // N-1 messages in K ticks
    const RiskRates r = risk_rates(sent, 200, p);
    CHECK(r.normalized == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.per_agent[0] == doctest::Approx(19.0 / 200.0).epsilon(1e-12));
    CHECK(r.swarm == doctest::Approx(20.0 * 19.0 / 200.0).epsilon(1e-12));
  }
  SUBCASE("xi scales the rates but not the normalisation") {
    p.xi = 3.0;
    const std::vector<std::uint64_t> sent(20, 19);
    const RiskRates r = risk_rates(sent, 200, p);
    CHECK(r.per_agent[0] == doctest::Approx(3.0 * 19.0 / 200.0));
    CHECK(r.normalized == doctest::Approx(1.0));
  }
  SUBCASE("empty window is an error") {
    const std::vector<std::uint64_t> sent(20, 0);
    CHECK_THROWS_AS(risk_rates(sent, 0, p), DomainError);
  }
}

TEST_CASE("detection_probability") {
  CHECK(detection_probability(0.0, 1.0) == 0.0);
  CHECK(detection_probability(std::log(2.0), 1.0) ==
        doctest::Approx(0.5).epsilon(1e-12));
  // Small rates linearise: within 0.5% of R' * tau.
  const double p = detection_probability(0.01, 1.0);
  CHECK(std::abs(p - 0.01) / 0.01 < 0.005);
  // Monotone and bounded.
  double prev = -1.0;
  for (double rate = 0.0; rate < 10.0; rate += 0.1) {
    const double v = detection_probability(rate, 1.0);
    CHECK(v > prev);
    CHECK(v < 1.0);
    prev = v;
  }
}

TEST_CASE("ccs on hand-built 3-agent swarms") {
  BeliefMatrix b = BeliefMatrix::uniform(3, 1.0);
  CHECK(ccs(b, 0.75, 3));

  // Symmetric chain: strong 1-2 and 2-3, broken 1-3. Best 1->3 path is
  // 0.8 * 0.8 = 0.64 < 0.75.
  b = BeliefMatrix::uniform(3, 0.1);
  b.phi(0, 1) = b.phi(1, 0) = 0.8;
  b.phi(1, 2) = b.phi(2, 1) = 0.8;
  CHECK_FALSE(ccs(b, 0.75, 3));

  // 0.9 links rescue it: 0.81 > 0.75.
  b.phi(0, 1) = b.phi(1, 0) = 0.9;
  b.phi(1, 2) = b.phi(2, 1) = 0.9;
  CHECK(ccs(b, 0.75, 3));
}

TEST_CASE("best_path_products agrees with brute-force enumeration") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 2 + seed % 3;  // 2..4 agents
    const BeliefMatrix b = random_beliefs(n, seed);
    for (int hops = 1; hops <= 3; ++hops) {
      const SquareMatrix best = best_path_products(b, hops);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          CHECK(best(i, j) ==
                doctest::Approx(brute_force_best_path(b, i, j, hops))
                    .epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("widening the hop budget never shrinks the best product") {
  const BeliefMatrix b = random_beliefs(5, 77);
  const SquareMatrix h1 = best_path_products(b, 1);
  const SquareMatrix h2 = best_path_products(b, 2);
  const SquareMatrix h3 = best_path_products(b, 3);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(h2(i, j) >= h1(i, j));
      CHECK(h3(i, j) >= h2(i, j));
    }
  }
}

TEST_CASE("ccs is monotone in beliefs and antitone in the threshold") {
  RngStream rng(13, 0, 0, StreamPurpose::kEnvGen);
  for (int trial = 0; trial < 50; ++trial) {
    BeliefMatrix b = random_beliefs(4, 1000 + trial);
    const bool before = ccs(b, 0.75, 3);

    // Raise one off-diagonal entry: can only help.
    const std::size_t i = rng.next_below(4);
    std::size_t j = rng.next_below(4);
    if (i == j) j = (j + 1) % 4;
    b.phi(i, j) = std::min(1.0, b.phi(i, j) + rng.next_unit() * 0.5);
    if (before) CHECK(ccs(b, 0.75, 3));

    // Raise the threshold: can only hurt.
    if (!before) CHECK_FALSE(ccs(b, 0.85, 3));
  }
}

TEST_CASE("u_r counts found links over efficient links") {
  SUBCASE("perfect knowledge of a complete environment") {
    const BeliefMatrix b = BeliefMatrix::uniform(4, 1.0);
    const Environment env = flat_env(4, 1.0);
    CHECK(u_r(b, env, 0.75) == 1.0);
  }
  SUBCASE("one direction found out of two") {
    BeliefMatrix b = BeliefMatrix::uniform(2, 0.0);
    b.phi(0, 1) = 0.9;
    b.phi(1, 0) = 0.1;
    const Environment env = flat_env(2, 1.0);
    CHECK(u_r(b, env, 0.75) == doctest::Approx(0.5));
  }
  SUBCASE("no efficient links is degenerate") {
    const BeliefMatrix b = BeliefMatrix::uniform(3, 0.9);
    const Environment env = flat_env(3, 0.5);
    CHECK_THROWS_AS(u_r(b, env, 0.75), DomainError);
  }
}

TEST_CASE("histogram concentrates, conserves and clamps") {
  Histogram h(50);
  const BeliefMatrix floor = BeliefMatrix::uniform(20, 0.1);
  for (int s = 0; s < 7; ++s) h.accumulate(floor);

  // Diagonal ones land in the top bin; the floor value in bin 5.
  CHECK(h.total() == 7ull * 20 * 19);
  CHECK(h.counts[5] == 7ull * 20 * 19);

  Histogram top(10);
  top.accumulate(BeliefMatrix::uniform(3, 1.0));
  CHECK(top.counts[9] == 6);  // phi = 1.0 clamps into the last bin
  CHECK_THROWS_AS(Histogram(1), DomainError);
}
