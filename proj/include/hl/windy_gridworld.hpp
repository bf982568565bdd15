#pragma once

#include <array>

#include "hl/environment_model.hpp"

namespace hl {

/// Grid cell, zero-based. Row 0 is the top row; wind pushes toward it.
struct GridPos {
  int row = 0;
  int col = 0;
  friend bool operator==(const GridPos&, const GridPos&) = default;
};

enum class GridAction : ActionId { up = 0, down = 1, left = 2, right = 3 };

/// 7x10 windy gridworld run as a continuing task. The wind of the departure
/// column is applied after the intended move and the result is clipped to
/// the grid. Entering the goal pays 1 and lands the agent back on the start.
class WindyGridworld : public Environment {
 public:
  static constexpr int kRows = 7;
  static constexpr int kCols = 10;
  static constexpr std::array<int, kCols> kWind = {0, 0, 0, 1, 1, 1, 2, 2, 1, 0};
  static constexpr GridPos kStart = {3, 0};
  static constexpr GridPos kGoal = {3, 7};

  WindyGridworld();

  /// Pure dynamics; consumes no randomness.
  static std::pair<double, GridPos> gridworld_step(GridPos pos, GridAction action);

  static StateId state_of(GridPos pos) { return static_cast<StateId>(pos.row * kCols + pos.col); }
  static GridPos pos_of(StateId s) {
    return {static_cast<int>(s) / kCols, static_cast<int>(s) % kCols};
  }

  std::size_t num_states() const override { return kRows * kCols; }
  std::size_t num_actions() const override { return 4; }
  StateId start_state() const override { return state_of(kStart); }
  StepResult step(StateId s, ActionId a, Rng& rng) override;
  const EnvironmentModel& exact_model() const override { return model_; }
  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<WindyGridworld>(*this);
  }

 private:
  EnvironmentModel model_;
};

}  // namespace hl
