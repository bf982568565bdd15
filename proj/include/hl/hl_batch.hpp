#pragma once

#include <span>
#include <vector>

#include "hl/types.hpp"

namespace hl {

/// Discounted statistics of a trajectory s_1..s_t evaluated from their
/// definitions, with the visit counter seeded by a pseudo-count:
///
///   N[s] = n0 * lambda^(t-1) + sum_k lambda^(t-k) [s_k == s]
///   E[s] = sum_k (lambda*gamma)^(t-k) [s_k == s]
///   R[s] = sum_{u<t} lambda^(t-u) E^u[s] r_u
///
/// The n0 * lambda^(t-1) seed matches an incremental estimator that starts
/// every counter at n0 before its first increment.
struct BatchTables {
  std::vector<double> visits;
  std::vector<double> traces;
  std::vector<double> discounted_rewards;
  std::size_t length = 0;
  StateId last_state = 0;
};

BatchTables hl_batch_tables(std::span<const StateId> trajectory, std::span<const double> rewards,
                            const DiscountParams& params, double pseudo_count,
                            std::size_t num_states);

/// Closed-form least-squares estimate
///   V[s] = (R[s] + E[s] * R[s_t] / (N[s_t] - E[s_t])) / N[s].
/// Throws DegenerateDenominator if N[s_t] - E[s_t] <= 1e-12, and
/// std::logic_error if the result violates V[s] N[s] = R[s] + E[s] V[s_t].
std::vector<double> hl_batch_values(std::span<const StateId> trajectory,
                                    std::span<const double> rewards, const DiscountParams& params,
                                    double pseudo_count, std::size_t num_states);

/// Max over states of |V[s] N[s] - R[s] - E[s] V[s_t]|.
double bootstrap_residual(const BatchTables& tables, std::span<const double> values);

}  // namespace hl
