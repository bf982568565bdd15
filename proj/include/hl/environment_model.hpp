#pragma once

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "hl/random.hpp"
#include "hl/types.hpp"

namespace hl {

/// One possible result of taking action a in state s.
struct Outcome {
  StateId next = 0;
  double probability = 0.0;
  double reward = 0.0;
};

struct StepResult {
  double reward = 0.0;
  StateId next = 0;
};

/// Exact transition and reward kernel P(s,a,s'), R(s,a,s'), stored sparsely
/// per (s,a) row.
class EnvironmentModel {
 public:
  EnvironmentModel() = default;
  EnvironmentModel(std::size_t num_states, std::size_t num_actions, StateId start_state = 0);

  std::size_t num_states() const { return num_states_; }
  std::size_t num_actions() const { return num_actions_; }
  StateId start_state() const { return start_state_; }

  /// Replaces row (s,a). Zero-probability outcomes are dropped.
  void set_outcomes(StateId s, ActionId a, std::vector<Outcome> outcomes);
  std::span<const Outcome> outcomes(StateId s, ActionId a) const;

  double probability(StateId s, ActionId a, StateId next) const;
  /// R(s,a,s'); zero when the transition is impossible.
  double reward(StateId s, ActionId a, StateId next) const;
  /// sum_{s'} P(s,a,s') R(s,a,s').
  double expected_reward(StateId s, ActionId a) const;

  /// Samples s' ~ P(s,a,.). Rows with a single outcome consume no randomness.
  StepResult sample(StateId s, ActionId a, Rng& rng) const;

  /// Throws std::logic_error unless every row sums to 1 within 1e-9.
  void validate() const;

 private:
  std::size_t index(StateId s, ActionId a) const;

  std::size_t num_states_ = 0;
  std::size_t num_actions_ = 0;
  StateId start_state_ = 0;
  std::vector<std::vector<Outcome>> rows_;
  std::vector<std::vector<double>> cumulative_;
};

/// Common sampling contract shared by all simulated environments.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::size_t num_states() const = 0;
  virtual std::size_t num_actions() const = 0;
  virtual StateId start_state() const = 0;

  /// Samples one transition. Time-varying environments advance their clock.
  virtual StepResult step(StateId s, ActionId a, Rng& rng) = 0;
  /// Exact model in force for the next call to step().
  virtual const EnvironmentModel& exact_model() const = 0;
  /// Fresh copy with the clock rewound to step 0.
  virtual std::unique_ptr<Environment> clone() const = 0;
};

inline StepResult env_step(Environment& env, StateId s, ActionId a, Rng& rng) {
  return env.step(s, a, rng);
}

inline const EnvironmentModel& exact_model(const Environment& env) { return env.exact_model(); }

/// Stationary environment backed directly by an exact model.
class ModelEnvironment : public Environment {
 public:
  explicit ModelEnvironment(EnvironmentModel model) : model_(std::move(model)) {}

  std::size_t num_states() const override { return model_.num_states(); }
  std::size_t num_actions() const override { return model_.num_actions(); }
  StateId start_state() const override { return model_.start_state(); }
  StepResult step(StateId s, ActionId a, Rng& rng) override { return model_.sample(s, a, rng); }
  const EnvironmentModel& exact_model() const override { return model_; }
  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<ModelEnvironment>(*this);
  }

 private:
  EnvironmentModel model_;
};

}  // namespace hl
