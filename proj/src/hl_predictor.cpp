#include "hl/hl_predictor.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hl {

namespace {

// 1 / (1 - gamma * E[s'] / N[s']) == N[s'] / (N[s'] - gamma * E[s']); the
// per-state rate is this factor divided by N[x].
double successor_factor(double n_next, double e_next, double gamma) {
  const double denom = n_next - gamma * e_next;
  if (!(n_next > 0.0) || !(denom > kDenominatorTolerance * n_next))
    throw DegenerateDenominator("HL learning rate: N[s'] - gamma*E[s'] = " +
                                std::to_string(denom) + " with N[s'] = " +
                                std::to_string(n_next) + " (zero pseudo-count on a first visit?)");
  return n_next / denom;
}

}  // namespace

double hl_beta(std::span<const double> visits, std::span<const double> traces, StateId s,
               StateId s_next, double gamma) {
  const double factor = successor_factor(visits[s_next], traces[s_next], gamma);
  const double n_s = visits[s];
  if (!(n_s > kDenominatorTolerance))
    throw DegenerateDenominator("HL learning rate: N[s] = " + std::to_string(n_s));
  return factor / n_s;
}

HlPredictor::HlPredictor(std::size_t num_states, DiscountParams params, HlOptions options)
    : params_(params),
      options_(options),
      values_(num_states, 0.0),
      traces_(num_states, 0.0),
      visits_(num_states, options.pseudo_count),
      is_active_(num_states, 0) {
  if (num_states == 0) throw std::invalid_argument("HlPredictor: no states");
  params_.validate();
  if (!(options_.pseudo_count >= 0.0))
    throw std::invalid_argument("HlPredictor: pseudo-count must be non-negative");
  if (!(options_.trace_cutoff >= 0.0))
    throw std::invalid_argument("HlPredictor: trace cutoff must be non-negative");
  active_.reserve(num_states);
}

void HlPredictor::check_state(StateId s) const {
  if (s >= values_.size())
    throw std::out_of_range("HlPredictor: state " + std::to_string(s) + " out of range");
}

void HlPredictor::activate(StateId s) {
  if (!is_active_[s]) {
    is_active_[s] = 1;
    active_.push_back(s);
  }
}

void HlPredictor::step(const TransitionStep& transition) {
  const StateId s = transition.s;
  const StateId s_next = transition.s_next;
  check_state(s);
  check_state(s_next);

  traces_[s] += 1.0;
  visits_[s] += 1.0;
  activate(s);

  const double delta = transition.reward + params_.gamma * values_[s_next] - values_[s];
  const double factor = successor_factor(visits_[s_next], traces_[s_next], params_.gamma);

  if (delta != 0.0) {
    for (const StateId x : active_) values_[x] += traces_[x] * (factor / visits_[x]) * delta;
  }

  const double trace_decay = params_.lambda * params_.gamma;
  for (double& n : visits_) n *= params_.lambda;
  for (std::size_t i = 0; i < active_.size();) {
    const StateId x = active_[i];
    traces_[x] *= trace_decay;
    if (traces_[x] <= options_.trace_cutoff) {
      traces_[x] = 0.0;
      is_active_[x] = 0;
      active_[i] = active_.back();
      active_.pop_back();
    } else {
      ++i;
    }
  }
}

}  // namespace hl
