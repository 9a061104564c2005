#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "swarmsim/engine.hpp"
#include "swarmsim/envgen.hpp"
#include "swarmsim/errors.hpp"
#include "swarmsim/metrics.hpp"
#include "swarmsim/world.hpp"

using namespace swarmsim;

namespace {

SimParams flat_params(std::uint32_t n, Tick k) {
  SimParams p;
  p.n = n;
  p.k_period = k;
  p.phi_min = 0.1;
  return p;
}

// A Timer threshold no tick count can reach: the swarm stays silent.
SimParams silent_params(std::uint32_t n, Tick k) {
  SimParams p = flat_params(n, k);
  p.tactic.kind = TacticKind::kTimer;
  p.tactic.theta_t = 1'000'000'000;
  p.tactic.theta_f = 1'000'000'000;
  return p;
}

}  // namespace

TEST_CASE("loss_update keeps the floor fixed and decays toward it") {
  BeliefMatrix b = BeliefMatrix::uniform(3, 0.1);
  loss_update(b, 0.7, 1.0, 0.1);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(b.phi(a, j) == (a == j ? 1.0 : 0.1));

  b.phi(0, 1) = 1.0;
  loss_update(b, std::log(2.0), 1.0, 0.1);
  // 0.1 + 0.5 * 0.9
  CHECK(b.phi(0, 1) == doctest::Approx(0.55).epsilon(1e-12));
  CHECK(b.phi(0, 0) == 1.0);
  CHECK(b.phi(1, 1) == 1.0);
}

TEST_CASE("attempt_delivery extremes") {
  BeliefMatrix b = BeliefMatrix::uniform(2, 1.0);
  const Message msg{0, 1, 0, 0};

  Environment blocked = flat_env(2, 0.0);
  Environment open = flat_env(2, 1.0);
  for (int i = 0; i < 200; ++i) {
    RngStream r1(i, 0, 0, StreamPurpose::kDelivery);
    CHECK_FALSE(attempt_delivery(msg, blocked, b, r1));
    RngStream r2(i, 0, 0, StreamPurpose::kDelivery);
    CHECK(attempt_delivery(msg, open, b, r2));
  }
}

TEST_CASE("attempt_delivery empirical rate is Bernoulli(L * phi)") {
  BeliefMatrix b = BeliefMatrix::uniform(2, 0.8);
  Environment env = flat_env(2, 0.95);
  const Message msg{0, 1, 0, 0};

  const int trials = 100000;
  int hits = 0;
  for (int i = 0; i < trials; ++i) {
    RngStream rng(4242, static_cast<std::uint64_t>(i), 0,
                  StreamPurpose::kDelivery);
    if (attempt_delivery(msg, env, b, rng)) ++hits;
  }
  const double expected = 0.95 * 0.8;
  const double sigma = std::sqrt(expected * (1 - expected) / trials);
  CHECK(std::abs(static_cast<double>(hits) / trials - expected) <
        3.0 * sigma);
}

TEST_CASE("apply_reception updates exactly the target's state") {
  SimParams p = flat_params(4, 50);
  World w = init_world(p, flat_env(4, 0.95));
  w.tick = 123;
  const World before = w;

  apply_reception(w, Message{2, 1, 123, 37});

  CHECK(w.beliefs.phi(1, 2) == 1.0);
  CHECK(w.logs[1].last_recv_from[2] == 123);
  CHECK(w.logs[1].latest_echo[2] == 37);

  // Nothing else moved: restore the three written cells and compare all.
  World patched = w;
  patched.beliefs.phi(1, 2) = before.beliefs.phi(1, 2);
  patched.logs[1].last_recv_from[2] = before.logs[1].last_recv_from[2];
  patched.logs[1].latest_echo[2] = before.logs[1].latest_echo[2];
  CHECK(patched.beliefs == before.beliefs);
  CHECK(patched.logs == before.logs);
}

TEST_CASE("silent ticks follow the exact geometric decay") {
  SimParams p = silent_params(5, 100);
  p.set_gamma_bar(0.8);
  p.phi_init = 1.0;
  World w = init_world(p, flat_env(5, 0.95));

  const double retain = std::exp(-p.gamma * p.tau);
  const Tick ticks = 1500;
  run(w, ticks);
  CHECK(w.total_sent() == 0);

  // Iterated-product closed form; drift stays far below 1e-12 here.
  double factor = 1.0;
  for (Tick t = 0; t < ticks; ++t) factor *= retain;
  const double expected = 0.1 + (1.0 - 0.1) * factor;
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = 0; b < 5; ++b)
      if (a != b)
        CHECK(std::abs(w.beliefs.phi(a, b) - expected) < 1e-12);
}

TEST_CASE("a mutual exchange refreshes both directions despite decay") {
  SimParams p = flat_params(2, 3);
  p.tactic.kind = TacticKind::kTimer;
  p.tactic.theta_t = 1;
  p.set_gamma_bar(0.1);

  // Find a seed where both agents send and both deliveries succeed in the
  // very first tick; determinism makes the choice stable.
  bool exercised = false;
  for (std::uint64_t seed = 0; seed < 64 && !exercised; ++seed) {
    SimParams ps = p;
    ps.seed = seed;
    World w = init_world(ps, flat_env(2, 1.0));
    w.beliefs.phi(0, 1) = 1.0;
    w.beliefs.phi(1, 0) = 1.0;
    step(w);
    if (w.sent[0] == 1 && w.sent[1] == 1 && w.delivered[0] == 1 &&
        w.delivered[1] == 1) {
      CHECK(w.beliefs.phi(0, 1) == 1.0);
      CHECK(w.beliefs.phi(1, 0) == 1.0);
      CHECK(w.logs[0].last_recv_from[1] == 0);
      CHECK(w.logs[1].last_recv_from[0] == 0);
      exercised = true;
    }
  }
  CHECK(exercised);
}

TEST_CASE("per tick each agent sends at most one message") {
  SimParams p = flat_params(10, 40);
  p.tactic.kind = TacticKind::kFilteredPlusPlus;
  p.set_gamma_bar(0.3);
  World w = init_world(p, flat_env(10, 0.95));

  std::vector<std::uint64_t> prev(w.sent);
  for (Tick t = 0; t < 2000; ++t) {
    step(w);
    std::uint64_t tick_total = 0;
    for (std::size_t a = 0; a < 10; ++a) {
      const auto sent_now = w.sent[a] - prev[a];
      CHECK(sent_now <= 1);
      tick_total += sent_now;
      CHECK(w.delivered[a] <= w.sent[a]);
    }
    CHECK(tick_total <= 10);
    prev = w.sent;
  }
}

TEST_CASE("beliefs stay inside [phi_min, 1] with a unit diagonal") {
  for (TacticKind kind : {TacticKind::kRandom, TacticKind::kFilteredPlus}) {
    SimParams p = flat_params(8, 30);
    p.tactic.kind = kind;
    p.set_gamma_bar(0.5);
    p.seed = 7;
    World w = init_world(p, er_env(8, 0.5, 3));
    for (Tick t = 0; t < 3000; ++t) {
      step(w);
      if (t % 250 == 0) w.beliefs.check_bounds(p.phi_min);
    }
    w.beliefs.check_bounds(p.phi_min);
  }
}

TEST_CASE("same seed reproduces the trajectory exactly") {
  SimParams p = flat_params(12, 60);
  p.tactic.kind = TacticKind::kFiltered;
  p.set_gamma_bar(0.4);
  p.seed = 99;

  World w1 = init_world(p, er_env(12, 0.4, 5));
  World w2 = init_world(p, er_env(12, 0.4, 5));
  run(w1, 5000);
  run(w2, 5000);
  CHECK(w1.beliefs == w2.beliefs);
  CHECK(w1.logs == w2.logs);
  CHECK(w1.sent == w2.sent);
  CHECK(w1.delivered == w2.delivered);
  CHECK(w1.tick == w2.tick);
}

TEST_CASE("run(0) leaves the world untouched") {
  SimParams p = flat_params(5, 25);
  World w = init_world(p, flat_env(5, 0.9));
  const World before = w;
  run(w, 0);
  CHECK(w.beliefs == before.beliefs);
  CHECK(w.logs == before.logs);
  CHECK(w.tick == 0);
}

TEST_CASE("observers see every tick and a recorder samples on cadence") {
  SimParams p = flat_params(6, 30);
  p.set_gamma_bar(0.2);
  World w = init_world(p, flat_env(6, 0.95));

  struct Counter : Observer {
    int calls = 0;
    void on_tick(const World&) override { ++calls; }
  } counter;

  MetricsRecorder recorder(w, {.sample_every = 10, .hist_bins = 20});
  Observer* obs[] = {&counter, &recorder};
  run(w, 95, obs);
  CHECK(counter.calls == 95);
  CHECK(recorder.frames().size() == 9);
  CHECK(recorder.frames().back().tick == 90);
}

TEST_CASE("delivered frequency tracks send rate times L times mean belief") {
  SimParams p = flat_params(20, 200);
  p.tactic.kind = TacticKind::kTimer;
  p.set_gamma_bar(0.2);
  p.seed = 21;
  World w = init_world(p, flat_env(20, 0.95));
  run(w, 10000);  // settle

  const auto sent_before = w.total_sent();
  const auto delivered_before = w.total_delivered();
  double phi_sum = 0.0;
  Tick samples = 0;
  for (Tick t = 0; t < 20000; ++t) {
    step(w);
    if (t % 100 == 0) {
      double s = 0.0;
      for (std::size_t a = 0; a < 20; ++a)
        for (std::size_t b = 0; b < 20; ++b)
          if (a != b) s += w.beliefs.phi(a, b);
      phi_sum += s / (20.0 * 19.0);
      ++samples;
    }
  }
  const double mean_phi = phi_sum / static_cast<double>(samples);
  const double delivery_ratio =
      static_cast<double>(w.total_delivered() - delivered_before) /
      static_cast<double>(w.total_sent() - sent_before);
  // Deliveries succeed with probability L * phi(sender, target) at send
  // time; the time-averaged belief is an adequate proxy at this loss.
  CHECK(std::abs(delivery_ratio - 0.95 * mean_phi) < 0.05);
}

TEST_CASE("trajectories depend on gamma*tau*K through gamma_bar") {
  // Halve K, keep gamma_bar: time-averaged performance should agree to a
  // few percent (statistical, not exact: integer cadences differ).
  auto mean_phi_hat = [](Tick k) {
    SimParams p;
    p.n = 10;
    p.k_period = k;
    p.phi_min = 0.1;
    p.tactic.kind = TacticKind::kTimer;
    p.set_gamma_bar(0.3);
    p.seed = 5;
    World w = init_world(p, flat_env(10, 0.95));
    run(w, 10 * k);
    MetricsRecorder rec(w, {.sample_every = 5, .hist_bins = 10});
    Observer* obs[] = {&rec};
    run(w, 100 * k, obs);
    return rec.mean_phi_hat();
  };
  const double at_100 = mean_phi_hat(100);
  const double at_200 = mean_phi_hat(200);
  CHECK(std::abs(at_100 - at_200) < 0.05);
}
