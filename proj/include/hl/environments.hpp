#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "hl/environment_model.hpp"

namespace hl {

/// Random walk on n states (n odd, >= 3). Interior states step to either
/// neighbour with probability 1/2 and reward 0. The end states jump to the
/// middle state: from 0 with `end_reward_high`, from n-1 with
/// `end_reward_low`. Starts in the middle.
class ChainProcess : public ModelEnvironment {
 public:
  explicit ChainProcess(std::size_t n, double end_reward_high = 1.0, double end_reward_low = -1.0);

  std::size_t size() const { return n_; }
  StateId mid() const { return (n_ - 1) / 2; }
  double end_reward_high() const { return high_; }
  double end_reward_low() const { return low_; }

  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<ChainProcess>(*this);
  }

 private:
  std::size_t n_;
  double high_;
  double low_;
};

EnvironmentModel chain_model(std::size_t n, double end_reward_high = 1.0,
                             double end_reward_low = -1.0);

/// Dense random Markov reward process. Each transition weight is zero with
/// probability `zero_prob` and uniform on [0,1] otherwise; rows are then
/// normalised. Rewards follow the same law without normalisation.
class RandomMarkovProcess : public ModelEnvironment {
 public:
  RandomMarkovProcess(std::vector<double> transitions, std::vector<double> rewards,
                      std::size_t n, std::uint64_t seed);

  std::size_t size() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  /// Row-major n x n matrices.
  const std::vector<double>& transition_matrix() const { return transitions_; }
  const std::vector<double>& reward_matrix() const { return rewards_; }

  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<RandomMarkovProcess>(*this);
  }

 private:
  std::size_t n_;
  std::uint64_t seed_;
  std::vector<double> transitions_;
  std::vector<double> rewards_;
};

/// Deterministic in `seed`. An all-zero transition row is redrawn; after
/// 1,000 failed draws for one row GenerationFailure is thrown.
RandomMarkovProcess make_random_markov(std::uint64_t seed, std::size_t n = 50,
                                       double zero_prob = 0.9);

enum class Phase { a, b };

/// Alternates between two models every `period` steps: phase A while
/// floor(t / period) is even, where t counts completed steps.
class SwitchingProcess : public Environment {
 public:
  SwitchingProcess(EnvironmentModel phase_a, EnvironmentModel phase_b, std::uint64_t period);

  std::size_t num_states() const override { return phase_a_.num_states(); }
  std::size_t num_actions() const override { return phase_a_.num_actions(); }
  StateId start_state() const override { return phase_a_.start_state(); }

  StepResult step(StateId s, ActionId a, Rng& rng) override;
  const EnvironmentModel& exact_model() const override { return model_at(clock_); }
  std::unique_ptr<Environment> clone() const override;

  std::uint64_t period() const { return period_; }
  std::uint64_t clock() const { return clock_; }
  Phase phase_at(std::uint64_t t) const { return (t / period_) % 2 == 0 ? Phase::a : Phase::b; }
  const EnvironmentModel& model_at(std::uint64_t t) const {
    return phase_at(t) == Phase::a ? phase_a_ : phase_b_;
  }

 private:
  EnvironmentModel phase_a_;
  EnvironmentModel phase_b_;
  std::uint64_t period_;
  std::uint64_t clock_ = 0;
};

/// Chain(n) in phase A; in phase B the reward for leaving the last state
/// becomes `phase_b_low_reward`.
SwitchingProcess make_switching_chain(std::size_t n = 21, std::uint64_t period = 5000,
                                      double phase_b_low_reward = 0.5);

}  // namespace hl
