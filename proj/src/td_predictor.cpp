#include "hl/td_predictor.hpp"

#include <string>

namespace hl {

TdPredictor::TdPredictor(std::size_t num_states, DiscountParams params,
                         LearningRateSchedule schedule, double trace_cutoff)
    : params_(params),
      schedule_(schedule),
      trace_cutoff_(trace_cutoff),
      values_(num_states, 0.0),
      traces_(num_states, 0.0),
      is_active_(num_states, 0) {
  if (num_states == 0) throw std::invalid_argument("TdPredictor: no states");
  params_.validate(/*allow_zero_lambda=*/true);
  schedule_.validate();
  active_.reserve(num_states);
}

void TdPredictor::step(const TransitionStep& transition) {
  const StateId s = transition.s;
  const StateId s_next = transition.s_next;
  if (s >= values_.size() || s_next >= values_.size())
    throw std::out_of_range("TdPredictor: state out of range");

  const double trace_decay = params_.gamma * params_.lambda;
  for (std::size_t i = 0; i < active_.size();) {
    const StateId x = active_[i];
    traces_[x] *= trace_decay;
    if (traces_[x] <= trace_cutoff_ && x != s) {
      traces_[x] = 0.0;
      is_active_[x] = 0;
      active_[i] = active_.back();
      active_.pop_back();
    } else {
      ++i;
    }
  }
  traces_[s] += 1.0;
  if (!is_active_[s]) {
    is_active_[s] = 1;
    active_.push_back(s);
  }

  const double delta = transition.reward + params_.gamma * values_[s_next] - values_[s];
  const double alpha = schedule_.rate(time_);
  for (const StateId x : active_) values_[x] += alpha * traces_[x] * delta;
  ++time_;
}

}  // namespace hl
