#pragma once

#include <span>
#include <vector>

#include "hl/types.hpp"

namespace hl {

/// Per-transition learning rate of HL(lambda):
///
///   beta(s, s') = 1 / (N[s'] - gamma * E[s'])  *  N[s'] / N[s]
///
/// Throws DegenerateDenominator when N[s] or N[s'] is not positive, or when
/// N[s'] - gamma * E[s'] is not above kDenominatorTolerance relative to N[s'].
double hl_beta(std::span<const double> visits, std::span<const double> traces, StateId s,
               StateId s_next, double gamma);

struct HlOptions {
  /// Initial value of every visit counter.
  double pseudo_count = 1.0;
  double trace_cutoff = kTraceCutoff;
};

/// Incremental HL(lambda) state-value estimator.
///
/// Each step increments the trace and visit counter of the departed state,
/// applies V[x] += E[x] * beta(x, s') * delta to every state with a live
/// trace, then decays E by lambda*gamma and N by lambda.
class HlPredictor {
 public:
  HlPredictor(std::size_t num_states, DiscountParams params, HlOptions options = {});

  void step(const TransitionStep& transition);

  std::size_t num_states() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& traces() const { return traces_; }
  const std::vector<double>& visits() const { return visits_; }
  double value(StateId s) const { return values_.at(s); }
  const DiscountParams& params() const { return params_; }
  const HlOptions& options() const { return options_; }
  /// Number of states currently in the value-update loop.
  std::size_t active_count() const { return active_.size(); }

 private:
  void check_state(StateId s) const;
  void activate(StateId s);

  DiscountParams params_;
  HlOptions options_;
  std::vector<double> values_;
  std::vector<double> traces_;
  std::vector<double> visits_;
  std::vector<StateId> active_;
  std::vector<char> is_active_;
};

}  // namespace hl
