#pragma once

#include <cstdint>
#include <vector>

#include "hl/schedule.hpp"
#include "hl/types.hpp"

namespace hl {

/// Classical TD(lambda) with accumulating traces and a scheduled step size.
class TdPredictor {
 public:
  TdPredictor(std::size_t num_states, DiscountParams params, LearningRateSchedule schedule,
              double trace_cutoff = kTraceCutoff);

  /// Decay traces, bump E[s], then V[x] += alpha_t * E[x] * delta.
  void step(const TransitionStep& transition);

  std::size_t num_states() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& traces() const { return traces_; }
  double value(StateId s) const { return values_.at(s); }
  /// Index of the next update (starts at 1).
  std::uint64_t time() const { return time_; }
  const LearningRateSchedule& schedule() const { return schedule_; }

 private:
  DiscountParams params_;
  LearningRateSchedule schedule_;
  double trace_cutoff_;
  std::uint64_t time_ = 1;
  std::vector<double> values_;
  std::vector<double> traces_;
  std::vector<StateId> active_;
  std::vector<char> is_active_;
};

}  // namespace hl
