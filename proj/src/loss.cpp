#include "hl/loss.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace hl {

std::size_t loss_horizon(double gamma) {
  std::size_t h = 1;
  double g = gamma;
  while (!(g < 1e-3)) {
    g *= gamma;
    ++h;
  }
  return h;
}

double weighted_loss(std::span<const StateId> trajectory, std::span<const double> rewards,
                     std::span<const double> values, const DiscountParams& params,
                     std::size_t horizon_cut) {
  const std::size_t t = trajectory.size();
  if (rewards.size() + 1 != t && !(t == 0 && rewards.empty()))
    throw LengthMismatch("weighted_loss: need one reward per transition");
  if (!(std::pow(params.gamma, static_cast<double>(horizon_cut)) < 1e-3))
    throw std::invalid_argument("weighted_loss: horizon cut too short for gamma");
  if (t <= horizon_cut) throw EmptyTrajectory("weighted_loss: no term survives the horizon cut");

  // returns[k] = sum_{u>=k} gamma^(u-k) r_u over the recorded rewards.
  std::vector<double> returns(t, 0.0);
  for (std::size_t k = t - 1; k-- > 0;) returns[k] = rewards[k] + params.gamma * returns[k + 1];

  double loss = 0.0;
  for (std::size_t k = 0; k < t - horizon_cut; ++k) {
    const double err = returns[k] - values[trajectory[k]];
    loss += std::pow(params.lambda, static_cast<double>(t - 1 - k)) * err * err;
  }
  return 0.5 * loss;
}

}  // namespace hl
