#include <doctest.h>

#include <cmath>
#include <vector>

#include "hl/environments.hpp"
#include "hl/hl_batch.hpp"
#include "hl/hl_predictor.hpp"
#include "hl/loss.hpp"
#include "hl/random.hpp"
#include "hl/schedule.hpp"
#include "hl/td_predictor.hpp"

using namespace hl;

namespace {

struct Trajectory {
  std::vector<StateId> states;
  std::vector<double> rewards;
};

Trajectory random_trajectory(Rng& rng, std::size_t num_states, std::size_t length) {
  Trajectory t;
  for (std::size_t k = 0; k < length; ++k) t.states.push_back(rng.below(num_states));
  for (std::size_t k = 0; k + 1 < length; ++k) t.rewards.push_back(rng.uniform(-1.0, 1.0));
  return t;
}

std::vector<double> run_incremental(const Trajectory& t, std::size_t num_states,
                                    DiscountParams params, HlOptions options = {}) {
  HlPredictor p(num_states, params, options);
  for (std::size_t k = 0; k + 1 < t.states.size(); ++k)
    p.step({t.states[k], t.rewards[k], t.states[k + 1]});
  return p.values();
}

}  // namespace

TEST_CASE("hl_beta matches direct substitution") {
  SUBCASE("unvisited successor with many visits") {
    const std::vector<double> n{1.0, 10.0};
    const std::vector<double> e{0.0, 0.0};
    CHECK(hl_beta(n, e, 0, 1, 0.9) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("self transition has unit count ratio") {
    const std::vector<double> n{2.0};
    const std::vector<double> e{1.0};
    CHECK(hl_beta(n, e, 0, 0, 0.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  }
  SUBCASE("general case") {
    const std::vector<double> n{3.0, 1.5};
    const std::vector<double> e{0.0, 1.2};
    const double expected = (1.0 / (1.5 - 0.9 * 1.2)) * (1.5 / 3.0);
    CHECK(expected == doctest::Approx(1.1904761904761905).epsilon(1e-12));
    CHECK(hl_beta(n, e, 0, 1, 0.9) == doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("zero visit counter is degenerate") {
    const std::vector<double> n{1.0, 0.0};
    const std::vector<double> e{1.0, 0.0};
    CHECK_THROWS_AS(hl_beta(n, e, 0, 1, 0.9), DegenerateDenominator);
    CHECK_THROWS_AS(hl_beta(n, e, 1, 0, 0.9), DegenerateDenominator);
  }
}

TEST_CASE("hl_step on a single self-rewarding transition") {
  HlPredictor p(1, {0.5, 1.0});
  p.step({0, 1.0, 0});
  CHECK(p.value(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const std::vector<StateId> traj{0, 0};
  const std::vector<double> rewards{1.0};
  CHECK(hl_batch_values(traj, rewards, {0.5, 1.0}, 1.0, 1)[0] ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("zero temporal-difference error leaves V untouched") {
  HlPredictor p(4, {0.9, 0.95});
  Rng rng(3);
  for (int k = 0; k < 200; ++k) p.step({rng.below(4), 0.0, rng.below(4)});
  for (double v : p.values()) CHECK(v == 0.0);
}

TEST_CASE("gamma = 0 reduces HL to a running mean shrunk toward zero") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    HlPredictor p(3, {0.0, 1.0});
    std::vector<double> sum(3, 0.0);
    std::vector<double> count(3, 0.0);
    for (int k = 0; k < 60; ++k) {
      const StateId s = rng.below(3);
      const double r = rng.uniform(-1.0, 1.0);
      p.step({s, r, rng.below(3)});
      sum[s] += r;
      count[s] += 1.0;
    }
    for (StateId s = 0; s < 3; ++s)
      CHECK(std::abs(p.value(s) - sum[s] / (count[s] + 1.0)) <= 1e-12);
  }
}

TEST_CASE("incremental HL equals the closed-form estimator") {
  Rng rng(2024);
  double worst = 0.0;
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t num_states = 1 + rng.below(6);
    const Trajectory t = random_trajectory(rng, num_states, 2 + rng.below(60));
    const DiscountParams params{std::vector<double>{0.0, 0.5, 0.9, 0.99}[rng.below(4)],
                                std::vector<double>{1.0, 0.99, 0.9}[rng.below(3)]};
    const auto incremental = run_incremental(t, num_states, params);
    const auto batch = hl_batch_values(t.states, t.rewards, params, 1.0, num_states);
    for (std::size_t s = 0; s < num_states; ++s)
      worst = std::max(worst, std::abs(incremental[s] - batch[s]));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("non-unit pseudo-count keeps incremental and batch in agreement") {
  Rng rng(5);
  for (const double n0 : {0.25, 3.0}) {
    const Trajectory t = random_trajectory(rng, 4, 50);
    const DiscountParams params{0.8, 0.9};
    const auto incremental = run_incremental(t, 4, params, {n0, kTraceCutoff});
    const auto batch = hl_batch_values(t.states, t.rewards, params, n0, 4);
    for (std::size_t s = 0; s < 4; ++s) CHECK(incremental[s] == doctest::Approx(batch[s]).epsilon(1e-9));
  }
}

TEST_CASE("batch tables follow their recursions") {
  Rng rng(8);
  const Trajectory t = random_trajectory(rng, 3, 25);
  const DiscountParams params{0.7, 0.95};
  // N^{u+1} = lambda N^u + d, E^{u+1} = lambda gamma E^u + d, R^{u+1} = lambda (R^u + E^u r_u).
  std::vector<double> n(3, 1.0 / params.lambda), e(3, 0.0), r(3, 0.0);
  for (std::size_t u = 0; u < t.states.size(); ++u) {
    for (StateId s = 0; s < 3; ++s) {
      if (u > 0) r[s] = params.lambda * (r[s] + e[s] * t.rewards[u - 1]);
      n[s] = params.lambda * n[s] + (t.states[u] == s ? 1.0 : 0.0);
      e[s] = params.lambda * params.gamma * e[s] + (t.states[u] == s ? 1.0 : 0.0);
    }
  }
  const BatchTables tables = hl_batch_tables(t.states, t.rewards, params, 1.0, 3);
  for (StateId s = 0; s < 3; ++s) {
    CHECK(tables.visits[s] == doctest::Approx(n[s]).epsilon(1e-12));
    CHECK(tables.traces[s] == doctest::Approx(e[s]).epsilon(1e-12));
    CHECK(tables.discounted_rewards[s] == doctest::Approx(r[s]).epsilon(1e-12));
  }
  const auto values = hl_batch_values(t.states, t.rewards, params, 1.0, 3);
  CHECK(bootstrap_residual(tables, values) <= 1e-9);
}

TEST_CASE("batch estimator edge cases") {
  const DiscountParams params{0.9, 1.0};
  SUBCASE("all rewards zero") {
    const std::vector<StateId> traj{0, 1, 2, 1, 0};
    const std::vector<double> rewards(4, 0.0);
    for (double v : hl_batch_values(traj, rewards, params, 1.0, 3)) CHECK(v == 0.0);
  }
  SUBCASE("zero pseudo-count on a first visit") {
    const std::vector<StateId> traj{0, 1};
    const std::vector<double> rewards{1.0};
    CHECK_THROWS_AS(hl_batch_values(traj, rewards, params, 0.0, 2), DegenerateDenominator);
  }
  SUBCASE("length mismatch") {
    const std::vector<StateId> traj{0, 1};
    const std::vector<double> rewards{1.0, 2.0};
    CHECK_THROWS_AS(hl_batch_values(traj, rewards, params, 1.0, 2), LengthMismatch);
  }
}

TEST_CASE("zero pseudo-count raises on the first visit of the successor") {
  HlPredictor p(2, {0.9, 1.0}, {0.0, kTraceCutoff});
  CHECK_THROWS_AS(p.step({0, 1.0, 1}), DegenerateDenominator);
}

TEST_CASE("N - gamma E stays positive along long runs") {
  Rng rng(17);
  HlPredictor p(5, {0.99, 0.9});
  for (int k = 0; k < 5000; ++k) {
    p.step({rng.below(5), rng.uniform(-1.0, 1.0), rng.below(5)});
    for (StateId s = 0; s < 5; ++s) {
      REQUIRE(p.traces()[s] >= 0.0);
      REQUIRE(p.visits()[s] - 0.99 * p.traces()[s] > 0.0);
    }
  }
}

TEST_CASE("TD(lambda) step arithmetic") {
  SUBCASE("first step") {
    TdPredictor p(3, {0.9, 0.7}, LearningRateSchedule::fixed(0.5));
    p.step({0, 1.0, 1});
    CHECK(p.value(0) == doctest::Approx(0.5));
    CHECK(p.value(1) == 0.0);
  }
  SUBCASE("lambda = 0 is TD(0)") {
    TdPredictor p(3, {0.9, 0.0}, LearningRateSchedule::fixed(0.5));
    p.step({0, 1.0, 1});
    p.step({1, 1.0, 2});
    CHECK(p.value(0) == doctest::Approx(0.5));
    CHECK(p.value(1) == doctest::Approx(0.5));
  }
  SUBCASE("trace recursion") {
    Rng rng(4);
    const DiscountParams params{0.9, 0.8};
    TdPredictor p(4, params, LearningRateSchedule::fixed(0.1));
    std::vector<double> e(4, 0.0);
    for (int k = 0; k < 40; ++k) {
      const StateId s = rng.below(4);
      for (double& x : e) x *= params.gamma * params.lambda;
      e[s] += 1.0;
      p.step({s, 0.0, rng.below(4)});
      for (StateId x = 0; x < 4; ++x) CHECK(p.traces()[x] == e[x]);
    }
  }
}

TEST_CASE("learning-rate schedules") {
  CHECK(LearningRateSchedule::fixed(0.2).rate(1) == 0.2);
  CHECK(LearningRateSchedule::fixed(0.2).rate(123456) == 0.2);
  CHECK(LearningRateSchedule::fixed(0.05).rate(99) == 0.05);
  const auto cbrt = LearningRateSchedule::power(1.5, Decay::cube_root);
  CHECK(cbrt.rate(1) == 1.5);
  CHECK(cbrt.rate(8) == 0.75);
  CHECK(LearningRateSchedule::power(2.0, Decay::square_root).rate(16) == 0.5);
  CHECK(LearningRateSchedule::power(3.0, Decay::linear).rate(4) == 0.75);
  CHECK_THROWS(cbrt.rate(0));
  CHECK(parse_decay("cbrt") == Decay::cube_root);
  CHECK_THROWS_AS(parse_decay("exp"), std::invalid_argument);

  for (Decay d : {Decay::constant, Decay::cube_root, Decay::square_root, Decay::linear}) {
    const auto s = LearningRateSchedule::power(0.7, d);
    for (std::uint64_t t = 1; t < 2000; ++t) {
      REQUIRE(s.rate(t) > 0.0);
      REQUIRE(s.rate(t + 1) <= s.rate(t));
    }
  }
}

TEST_CASE("weighted loss") {
  const DiscountParams params{0.0, 1.0};
  SUBCASE("single term") {
    const std::vector<StateId> traj{0, 1};
    const std::vector<double> rewards{1.0};
    const std::vector<double> v{0.0, 0.0};
    CHECK(weighted_loss(traj, rewards, v, params, 1) == doctest::Approx(0.5));
  }
  SUBCASE("perfect fit") {
    const std::vector<StateId> traj{0, 1, 0, 1};
    const std::vector<double> rewards{2.0, 3.0, 2.0};
    const std::vector<double> v{2.0, 3.0};
    CHECK(weighted_loss(traj, rewards, v, params, 1) == 0.0);
  }
  SUBCASE("nothing survives the cut") {
    const std::vector<StateId> traj{0, 1};
    const std::vector<double> rewards{1.0};
    const std::vector<double> v{0.0, 0.0};
    CHECK_THROWS_AS(weighted_loss(traj, rewards, v, params, 2), EmptyTrajectory);
  }
  CHECK(loss_horizon(0.99) == 688);
}

TEST_CASE("HL(1.0) lowers the weighted loss on the 51-state chain") {
  ChainProcess chain(51);
  Rng rng(99);
  const DiscountParams params{0.99, 1.0};
  std::vector<StateId> traj{chain.start_state()};
  std::vector<double> rewards;
  HlPredictor p(51, params);
  for (int k = 0; k < 20000; ++k) {
    const StateId s = traj.back();
    const StepResult step = chain.step(s, 0, rng);
    p.step({s, step.reward, step.next});
    rewards.push_back(step.reward);
    traj.push_back(step.next);
  }
  const std::size_t cut = loss_horizon(params.gamma);
  const std::vector<double> zero(51, 0.0);
  CHECK(weighted_loss(traj, rewards, p.values(), params, cut) <
        weighted_loss(traj, rewards, zero, params, cut));
}
