#include "hl/control.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hl {

std::string_view to_string(ControlAlgorithm algorithm) {
  switch (algorithm) {
    case ControlAlgorithm::hls: return "hls";
    case ControlAlgorithm::sarsa: return "sarsa";
    case ControlAlgorithm::watkins_q: return "watkins";
    case ControlAlgorithm::hlq: return "hlq";
  }
  return "hls";
}

bool uses_hl_rate(ControlAlgorithm algorithm) {
  return algorithm == ControlAlgorithm::hls || algorithm == ControlAlgorithm::hlq;
}

ActionId epsilon_greedy(std::span<const double> q_row, double epsilon, Rng& rng) {
  if (q_row.empty()) throw std::invalid_argument("epsilon_greedy: empty action row");
  if (rng.uniform() < epsilon) return rng.below(q_row.size());

  double best = q_row[0];
  std::size_t ties = 1;
  for (std::size_t a = 1; a < q_row.size(); ++a) {
    if (q_row[a] > best) {
      best = q_row[a];
      ties = 1;
    } else if (q_row[a] == best) {
      ++ties;
    }
  }
  if (ties == 1) {
    for (std::size_t a = 0; a < q_row.size(); ++a)
      if (q_row[a] == best) return a;
  }
  std::size_t pick = rng.below(ties);
  for (std::size_t a = 0; a < q_row.size(); ++a)
    if (q_row[a] == best && pick-- == 0) return a;
  return 0;
}

ActionId greedy_action(std::span<const double> q_row, ActionId preferred) {
  ActionId best = 0;
  for (ActionId a = 1; a < q_row.size(); ++a)
    if (q_row[a] > q_row[best]) best = a;
  return q_row[preferred] == q_row[best] ? preferred : best;
}

QAgent::QAgent(std::size_t num_states, std::size_t num_actions, AgentConfig config)
    : num_states_(num_states),
      num_actions_(num_actions),
      config_(config),
      q_(num_states * num_actions, 0.0),
      traces_(num_states * num_actions, 0.0),
      visits_(num_states * num_actions, config.pseudo_count),
      is_active_(num_states * num_actions, 0) {
  if (num_states == 0 || num_actions == 0)
    throw std::invalid_argument("QAgent: need at least one state and one action");
  const bool hl = uses_hl_rate(config_.algorithm);
  config_.discount.validate(/*allow_zero_lambda=*/!hl);
  if (!(config_.epsilon >= 0.0 && config_.epsilon <= 1.0))
    throw std::invalid_argument("QAgent: epsilon must lie in [0, 1]");
  if (hl && !(config_.pseudo_count >= 0.0))
    throw std::invalid_argument("QAgent: pseudo-count must be non-negative");
  if (!hl) config_.schedule.validate();
  active_.reserve(q_.size());
}

std::span<const double> QAgent::q_row(StateId s) const {
  if (s >= num_states_) throw std::out_of_range("QAgent: state out of range");
  return std::span<const double>(q_).subspan(s * num_actions_, num_actions_);
}

double QAgent::max_trace() const {
  double m = 0.0;
  for (const std::size_t p : active_) m = std::max(m, traces_[p]);
  return m;
}

void QAgent::check(StateId s, ActionId a, StateId s_next) const {
  if (s >= num_states_ || s_next >= num_states_ || a >= num_actions_)
    throw std::out_of_range("QAgent: state or action out of range");
}

void QAgent::require(ControlAlgorithm algorithm) const {
  if (config_.algorithm != algorithm)
    throw std::logic_error("QAgent: configured as " + std::string(to_string(config_.algorithm)) +
                           ", called " + std::string(to_string(algorithm)) + " step");
}

ActionId QAgent::start(StateId s, Rng& rng) { return epsilon_greedy(q_row(s), config_.epsilon, rng); }

ActionId QAgent::step(StateId s, ActionId a, double reward, StateId s_next, Rng& rng) {
  switch (config_.algorithm) {
    case ControlAlgorithm::hls: return hls_step(s, a, reward, s_next, rng);
    case ControlAlgorithm::sarsa: return sarsa_step(s, a, reward, s_next, rng);
    case ControlAlgorithm::watkins_q: return watkins_q_step(s, a, reward, s_next, rng);
    case ControlAlgorithm::hlq: return hlq_step(s, a, reward, s_next, rng);
  }
  return 0;
}

void QAgent::accumulate(std::size_t p) {
  traces_[p] += 1.0;
  visits_[p] += 1.0;
  if (!is_active_[p]) {
    is_active_[p] = 1;
    active_.push_back(p);
  }
}

void QAgent::apply_hl(std::size_t successor, double delta) {
  if (!std::isfinite(delta)) throw NumericError("QAgent: non-finite temporal-difference error");
  if (config_.rate_override) {
    const double rate = *config_.rate_override;
    for (const std::size_t x : active_) q_[x] += rate * traces_[x] * delta;
    return;
  }
  // beta(x, succ) = factor / N[x] with factor = N[succ] / (N[succ] - gamma E[succ]).
  const double n_next = visits_[successor];
  const double denom = n_next - config_.discount.gamma * traces_[successor];
  if (!(n_next > 0.0) || !(denom > kDenominatorTolerance * n_next))
    throw DegenerateDenominator("QAgent: N - gamma*E vanished for the successor pair");
  const double factor = n_next / denom;
  if (delta == 0.0) return;
  for (const std::size_t x : active_) q_[x] += traces_[x] * (factor / visits_[x]) * delta;
}

void QAgent::apply_scheduled(double delta) {
  if (!std::isfinite(delta)) throw NumericError("QAgent: non-finite temporal-difference error");
  const double rate = config_.schedule.rate(time_++);
  for (const std::size_t x : active_) q_[x] += rate * traces_[x] * delta;
}

void QAgent::decay(bool decay_visits) {
  if (decay_visits && config_.discount.lambda != 1.0)
    for (double& n : visits_) n *= config_.discount.lambda;
  const double trace_decay = config_.discount.gamma * config_.discount.lambda;
  for (std::size_t i = 0; i < active_.size();) {
    const std::size_t x = active_[i];
    traces_[x] *= trace_decay;
    if (traces_[x] <= config_.trace_cutoff) {
      traces_[x] = 0.0;
      is_active_[x] = 0;
      active_[i] = active_.back();
      active_.pop_back();
    } else {
      ++i;
    }
  }
}

void QAgent::reset_traces() {
  for (const std::size_t x : active_) {
    traces_[x] = 0.0;
    is_active_[x] = 0;
  }
  active_.clear();
}

ActionId QAgent::hls_step(StateId s, ActionId a, double reward, StateId s_next, Rng& rng) {
  require(ControlAlgorithm::hls);
  check(s, a, s_next);
  const ActionId a_next = epsilon_greedy(q_row(s_next), config_.epsilon, rng);
  const std::size_t current = pair(s, a);
  const std::size_t successor = pair(s_next, a_next);
  const double delta = reward + config_.discount.gamma * q_[successor] - q_[current];
  accumulate(current);
  apply_hl(successor, delta);
  decay(/*decay_visits=*/true);
  last_explored_ = false;
  return a_next;
}

ActionId QAgent::sarsa_step(StateId s, ActionId a, double reward, StateId s_next, Rng& rng) {
  require(ControlAlgorithm::sarsa);
  check(s, a, s_next);
  const ActionId a_next = epsilon_greedy(q_row(s_next), config_.epsilon, rng);
  const std::size_t current = pair(s, a);
  const double delta = reward + config_.discount.gamma * q_[pair(s_next, a_next)] - q_[current];
  accumulate(current);
  apply_scheduled(delta);
  decay(/*decay_visits=*/false);
  last_explored_ = false;
  return a_next;
}

ActionId QAgent::watkins_q_step(StateId s, ActionId a, double reward, StateId s_next, Rng& rng) {
  require(ControlAlgorithm::watkins_q);
  check(s, a, s_next);
  const ActionId a_next = epsilon_greedy(q_row(s_next), config_.epsilon, rng);
  const ActionId a_star = greedy_action(q_row(s_next), a_next);
  const std::size_t current = pair(s, a);
  const double delta = reward + config_.discount.gamma * q_[pair(s_next, a_star)] - q_[current];
  accumulate(current);
  apply_scheduled(delta);
  last_explored_ = a_next != a_star;
  if (last_explored_)
    reset_traces();
  else
    decay(/*decay_visits=*/false);
  return a_next;
}

ActionId QAgent::hlq_step(StateId s, ActionId a, double reward, StateId s_next, Rng& rng) {
  require(ControlAlgorithm::hlq);
  check(s, a, s_next);
  const ActionId a_next = epsilon_greedy(q_row(s_next), config_.epsilon, rng);
  const ActionId a_star = greedy_action(q_row(s_next), a_next);
  const std::size_t current = pair(s, a);
  const std::size_t successor = pair(s_next, a_star);
  const double delta = reward + config_.discount.gamma * q_[successor] - q_[current];
  accumulate(current);
  apply_hl(successor, delta);
  last_explored_ = a_next != a_star;
  decay(/*decay_visits=*/true);
  // N keeps its lambda decay; only the traces are cut.
  if (last_explored_) reset_traces();
  return a_next;
}

}  // namespace hl
