#include "hl/windy_gridworld.hpp"

#include <algorithm>
#include <stdexcept>

namespace hl {

std::pair<double, GridPos> WindyGridworld::gridworld_step(GridPos pos, GridAction action) {
  if (pos.row < 0 || pos.row >= kRows || pos.col < 0 || pos.col >= kCols)
    throw std::out_of_range("gridworld_step: position off the grid");
  int row = pos.row;
  int col = pos.col;
  switch (action) {
    case GridAction::up: --row; break;
    case GridAction::down: ++row; break;
    case GridAction::left: --col; break;
    case GridAction::right: ++col; break;
  }
  row -= kWind[static_cast<std::size_t>(pos.col)];
  const GridPos next{std::clamp(row, 0, kRows - 1), std::clamp(col, 0, kCols - 1)};
  if (next == kGoal) return {1.0, kStart};
  return {0.0, next};
}

WindyGridworld::WindyGridworld() : model_(kRows * kCols, 4, state_of(kStart)) {
  for (StateId s = 0; s < num_states(); ++s) {
    for (ActionId a = 0; a < 4; ++a) {
      const auto [r, next] = gridworld_step(pos_of(s), static_cast<GridAction>(a));
      model_.set_outcomes(s, a, {{state_of(next), 1.0, r}});
    }
  }
}

StepResult WindyGridworld::step(StateId s, ActionId a, Rng&) {
  if (s >= num_states() || a >= 4) throw std::out_of_range("WindyGridworld: bad state or action");
  const auto [r, next] = gridworld_step(pos_of(s), static_cast<GridAction>(a));
  return {r, state_of(next)};
}

}  // namespace hl
