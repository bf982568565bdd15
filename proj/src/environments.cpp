#include "hl/environments.hpp"

#include <stdexcept>
#include <string>

namespace hl {

EnvironmentModel chain_model(std::size_t n, double end_reward_high, double end_reward_low) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("chain: size must be odd and >= 3, got " + std::to_string(n));
  const StateId mid = (n - 1) / 2;
  EnvironmentModel model(n, 1, mid);
  model.set_outcomes(0, 0, {{mid, 1.0, end_reward_high}});
  model.set_outcomes(n - 1, 0, {{mid, 1.0, end_reward_low}});
  for (StateId s = 1; s + 1 < n; ++s) model.set_outcomes(s, 0, {{s - 1, 0.5, 0.0}, {s + 1, 0.5, 0.0}});
  return model;
}

ChainProcess::ChainProcess(std::size_t n, double end_reward_high, double end_reward_low)
    : ModelEnvironment(chain_model(n, end_reward_high, end_reward_low)),
      n_(n),
      high_(end_reward_high),
      low_(end_reward_low) {}

namespace {

EnvironmentModel dense_model(const std::vector<double>& transitions,
                             const std::vector<double>& rewards, std::size_t n) {
  EnvironmentModel model(n, 1, 0);
  for (StateId s = 0; s < n; ++s) {
    std::vector<Outcome> row;
    for (StateId j = 0; j < n; ++j)
      if (transitions[s * n + j] > 0.0) row.push_back({j, transitions[s * n + j], rewards[s * n + j]});
    model.set_outcomes(s, 0, std::move(row));
  }
  return model;
}

}  // namespace

RandomMarkovProcess::RandomMarkovProcess(std::vector<double> transitions,
                                         std::vector<double> rewards, std::size_t n,
                                         std::uint64_t seed)
    : ModelEnvironment(dense_model(transitions, rewards, n)),
      n_(n),
      seed_(seed),
      transitions_(std::move(transitions)),
      rewards_(std::move(rewards)) {}

RandomMarkovProcess make_random_markov(std::uint64_t seed, std::size_t n, double zero_prob) {
  if (n == 0) throw std::invalid_argument("make_random_markov: no states");
  if (!(zero_prob >= 0.0 && zero_prob < 1.0))
    throw std::invalid_argument("make_random_markov: zero probability must lie in [0, 1)");
  Rng rng(seed);
  auto draw_entry = [&] {
    // Two draws per entry regardless of outcome keep the stream layout fixed.
    const bool zero = rng.bernoulli(zero_prob);
    const double value = rng.uniform();
    return zero ? 0.0 : value;
  };

  std::vector<double> transitions(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (int attempt = 0;; ++attempt) {
      if (attempt == 1000)
        throw GenerationFailure("make_random_markov: row " + std::to_string(i) +
                                " stayed all-zero after 1000 draws");
      total = 0.0;
      for (std::size_t j = 0; j < n; ++j) total += (transitions[i * n + j] = draw_entry());
      if (total > 0.0) break;
    }
    for (std::size_t j = 0; j < n; ++j) transitions[i * n + j] /= total;
  }

  std::vector<double> rewards(n * n, 0.0);
  for (double& r : rewards) r = draw_entry();
  return RandomMarkovProcess(std::move(transitions), std::move(rewards), n, seed);
}

SwitchingProcess::SwitchingProcess(EnvironmentModel phase_a, EnvironmentModel phase_b,
                                   std::uint64_t period)
    : phase_a_(std::move(phase_a)), phase_b_(std::move(phase_b)), period_(period) {
  if (period_ == 0) throw std::invalid_argument("SwitchingProcess: period must be positive");
  if (phase_a_.num_states() != phase_b_.num_states() ||
      phase_a_.num_actions() != phase_b_.num_actions())
    throw std::invalid_argument("SwitchingProcess: phase models differ in shape");
}

StepResult SwitchingProcess::step(StateId s, ActionId a, Rng& rng) {
  const StepResult result = model_at(clock_).sample(s, a, rng);
  ++clock_;
  return result;
}

std::unique_ptr<Environment> SwitchingProcess::clone() const {
  auto copy = std::make_unique<SwitchingProcess>(*this);
  copy->clock_ = 0;
  return copy;
}

SwitchingProcess make_switching_chain(std::size_t n, std::uint64_t period,
                                      double phase_b_low_reward) {
  return SwitchingProcess(chain_model(n, 1.0, -1.0), chain_model(n, 1.0, phase_b_low_reward),
                          period);
}

}  // namespace hl
