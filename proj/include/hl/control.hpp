#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hl/random.hpp"
#include "hl/schedule.hpp"
#include "hl/types.hpp"

namespace hl {

enum class ControlAlgorithm { hls, sarsa, watkins_q, hlq };

std::string_view to_string(ControlAlgorithm algorithm);
bool uses_hl_rate(ControlAlgorithm algorithm);

struct AgentConfig {
  ControlAlgorithm algorithm = ControlAlgorithm::hls;
  DiscountParams discount{};
  double epsilon = 0.05;
  /// Step size for Sarsa and Watkins' Q; ignored by the HL variants.
  LearningRateSchedule schedule{};
  double pseudo_count = 1.0;
  double trace_cutoff = kTraceCutoff;
  /// Replaces beta with a constant in the HL variants. Diagnostic only.
  std::optional<double> rate_override;
};

/// With probability epsilon a uniform action, otherwise a uniform choice among
/// the maximisers of `q_row`.
ActionId epsilon_greedy(std::span<const double> q_row, double epsilon, Rng& rng);

/// Greedy action for the Q(lambda) backup: `preferred` if it attains the
/// maximum, else the lowest maximising index.
ActionId greedy_action(std::span<const double> q_row, ActionId preferred);

/// Tabular epsilon-greedy control agent with accumulating traces over
/// (state, action) pairs.
class QAgent {
 public:
  QAgent(std::size_t num_states, std::size_t num_actions, AgentConfig config);

  /// Action for the first state of a run.
  ActionId start(StateId s, Rng& rng);

  /// Learns from (s, a, r, s') and returns the next action a'. Dispatches on
  /// the configured algorithm.
  ActionId step(StateId s, ActionId a, double reward, StateId s_next, Rng& rng);

  ActionId hls_step(StateId s, ActionId a, double reward, StateId s_next, Rng& rng);
  ActionId sarsa_step(StateId s, ActionId a, double reward, StateId s_next, Rng& rng);
  ActionId watkins_q_step(StateId s, ActionId a, double reward, StateId s_next, Rng& rng);
  ActionId hlq_step(StateId s, ActionId a, double reward, StateId s_next, Rng& rng);

  std::size_t num_states() const { return num_states_; }
  std::size_t num_actions() const { return num_actions_; }
  const AgentConfig& config() const { return config_; }

  std::span<const double> q_row(StateId s) const;
  double q(StateId s, ActionId a) const { return q_[pair(s, a)]; }
  double trace(StateId s, ActionId a) const { return traces_[pair(s, a)]; }
  double visits(StateId s, ActionId a) const { return visits_[pair(s, a)]; }
  const std::vector<double>& q_table() const { return q_; }
  double max_trace() const;
  /// True when the last Q(lambda)-style step took a non-greedy action.
  bool last_step_explored() const { return last_explored_; }

 private:
  std::size_t pair(StateId s, ActionId a) const { return s * num_actions_ + a; }
  void check(StateId s, ActionId a, StateId s_next) const;
  void require(ControlAlgorithm algorithm) const;
  void accumulate(std::size_t p);
  void apply_hl(std::size_t successor, double delta);
  void apply_scheduled(double delta);
  void decay(bool decay_visits);
  void reset_traces();

  std::size_t num_states_;
  std::size_t num_actions_;
  AgentConfig config_;
  std::uint64_t time_ = 1;
  bool last_explored_ = false;
  std::vector<double> q_;
  std::vector<double> traces_;
  std::vector<double> visits_;
  std::vector<std::size_t> active_;
  std::vector<char> is_active_;
};

}  // namespace hl
