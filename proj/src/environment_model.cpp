#include "hl/environment_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hl {

EnvironmentModel::EnvironmentModel(std::size_t num_states, std::size_t num_actions,
                                   StateId start_state)
    : num_states_(num_states),
      num_actions_(num_actions),
      start_state_(start_state),
      rows_(num_states * num_actions),
      cumulative_(num_states * num_actions) {
  if (num_states == 0 || num_actions == 0)
    throw std::invalid_argument("EnvironmentModel: need at least one state and one action");
  if (start_state >= num_states) throw std::out_of_range("EnvironmentModel: bad start state");
}

std::size_t EnvironmentModel::index(StateId s, ActionId a) const {
  if (s >= num_states_ || a >= num_actions_)
    throw std::out_of_range("EnvironmentModel: (" + std::to_string(s) + ", " + std::to_string(a) +
                            ") out of range");
  return s * num_actions_ + a;
}

void EnvironmentModel::set_outcomes(StateId s, ActionId a, std::vector<Outcome> outcomes) {
  const std::size_t i = index(s, a);
  std::vector<Outcome> kept;
  kept.reserve(outcomes.size());
  for (const Outcome& o : outcomes) {
    if (o.next >= num_states_) throw std::out_of_range("EnvironmentModel: successor out of range");
    if (o.probability < 0.0) throw std::invalid_argument("EnvironmentModel: negative probability");
    if (o.probability > 0.0) kept.push_back(o);
  }
  std::vector<double> cumulative;
  cumulative.reserve(kept.size());
  double total = 0.0;
  for (const Outcome& o : kept) {
    total += o.probability;
    cumulative.push_back(total);
  }
  rows_[i] = std::move(kept);
  cumulative_[i] = std::move(cumulative);
}

std::span<const Outcome> EnvironmentModel::outcomes(StateId s, ActionId a) const {
  return rows_[index(s, a)];
}

double EnvironmentModel::probability(StateId s, ActionId a, StateId next) const {
  double p = 0.0;
  for (const Outcome& o : outcomes(s, a))
    if (o.next == next) p += o.probability;
  return p;
}

double EnvironmentModel::reward(StateId s, ActionId a, StateId next) const {
  for (const Outcome& o : outcomes(s, a))
    if (o.next == next) return o.reward;
  return 0.0;
}

double EnvironmentModel::expected_reward(StateId s, ActionId a) const {
  double r = 0.0;
  for (const Outcome& o : outcomes(s, a)) r += o.probability * o.reward;
  return r;
}

StepResult EnvironmentModel::sample(StateId s, ActionId a, Rng& rng) const {
  const std::size_t i = index(s, a);
  const auto& row = rows_[i];
  if (row.empty()) throw std::logic_error("EnvironmentModel: row has no outcomes");
  if (row.size() == 1) return {row.front().reward, row.front().next};
  const auto& cumulative = cumulative_[i];
  const double u = rng.uniform() * cumulative.back();
  for (std::size_t k = 0; k + 1 < row.size(); ++k)
    if (u < cumulative[k]) return {row[k].reward, row[k].next};
  return {row.back().reward, row.back().next};
}

void EnvironmentModel::validate() const {
  for (StateId s = 0; s < num_states_; ++s) {
    for (ActionId a = 0; a < num_actions_; ++a) {
      double total = 0.0;
      for (const Outcome& o : outcomes(s, a)) total += o.probability;
      if (std::abs(total - 1.0) > 1e-9)
        throw std::logic_error("EnvironmentModel: row (" + std::to_string(s) + ", " +
                               std::to_string(a) + ") sums to " + std::to_string(total));
    }
  }
}

}  // namespace hl
