#pragma once

#include <span>

#include "hl/types.hpp"

namespace hl {

/// Smallest h with gamma^h < 1e-3.
std::size_t loss_horizon(double gamma);

/// 1/2 sum_k lambda^(t-k) (v_k - V[s_k])^2 over k <= t - horizon_cut, where
/// v_k is the discounted return accumulated from the recorded rewards.
/// Throws std::invalid_argument if gamma^horizon_cut >= 1e-3 and
/// EmptyTrajectory when no k survives the cut.
double weighted_loss(std::span<const StateId> trajectory, std::span<const double> rewards,
                     std::span<const double> values, const DiscountParams& params,
                     std::size_t horizon_cut);

}  // namespace hl
