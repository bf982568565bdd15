#include "hl/hl_batch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hl {

BatchTables hl_batch_tables(std::span<const StateId> trajectory, std::span<const double> rewards,
                            const DiscountParams& params, double pseudo_count,
                            std::size_t num_states) {
  const std::size_t t = trajectory.size();
  if (t == 0) throw EmptyTrajectory("hl_batch_tables: empty trajectory");
  if (rewards.size() + 1 != t)
    throw LengthMismatch("hl_batch_tables: expected " + std::to_string(t - 1) + " rewards, got " +
                         std::to_string(rewards.size()));
  if (!(pseudo_count >= 0.0)) throw std::invalid_argument("hl_batch_tables: negative pseudo-count");
  params.validate();
  for (StateId s : trajectory)
    if (s >= num_states) throw std::out_of_range("hl_batch_tables: state out of range");

  const double lambda = params.lambda;
  const double lg = params.lambda * params.gamma;

  // trace_at(s, u) = E_s^u for the 1-based time u.
  auto trace_at = [&](StateId s, std::size_t u) {
    double e = 0.0;
    for (std::size_t k = 1; k <= u; ++k)
      if (trajectory[k - 1] == s) e += std::pow(lg, static_cast<double>(u - k));
    return e;
  };

  BatchTables out;
  out.length = t;
  out.last_state = trajectory[t - 1];
  out.visits.assign(num_states, pseudo_count * std::pow(lambda, static_cast<double>(t - 1)));
  out.traces.assign(num_states, 0.0);
  out.discounted_rewards.assign(num_states, 0.0);

  for (std::size_t k = 1; k <= t; ++k)
    out.visits[trajectory[k - 1]] += std::pow(lambda, static_cast<double>(t - k));
  for (StateId s = 0; s < num_states; ++s) {
    out.traces[s] = trace_at(s, t);
    double r = 0.0;
    for (std::size_t u = 1; u < t; ++u)
      r += std::pow(lambda, static_cast<double>(t - u)) * trace_at(s, u) * rewards[u - 1];
    out.discounted_rewards[s] = r;
  }
  return out;
}

double bootstrap_residual(const BatchTables& tables, std::span<const double> values) {
  const double v_last = values[tables.last_state];
  double worst = 0.0;
  for (std::size_t s = 0; s < values.size(); ++s) {
    const double lhs = values[s] * tables.visits[s];
    const double rhs = tables.discounted_rewards[s] + tables.traces[s] * v_last;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

std::vector<double> hl_batch_values(std::span<const StateId> trajectory,
                                    std::span<const double> rewards, const DiscountParams& params,
                                    double pseudo_count, std::size_t num_states) {
  const BatchTables tables = hl_batch_tables(trajectory, rewards, params, pseudo_count, num_states);
  const StateId last = tables.last_state;
  const double denom = tables.visits[last] - tables.traces[last];
  if (!(denom > kDenominatorTolerance))
    throw DegenerateDenominator("hl_batch_values: N[s_t] - E[s_t] = " + std::to_string(denom));
  const double v_last = tables.discounted_rewards[last] / denom;

  std::vector<double> values(num_states, 0.0);
  for (StateId s = 0; s < num_states; ++s) {
    if (!(tables.visits[s] > kDenominatorTolerance))
      throw DegenerateDenominator("hl_batch_values: N[s] vanished for state " + std::to_string(s));
    values[s] = (tables.discounted_rewards[s] + tables.traces[s] * v_last) / tables.visits[s];
  }

  double scale = 1.0;
  for (StateId s = 0; s < num_states; ++s)
    scale = std::max(scale, std::abs(tables.discounted_rewards[s]) +
                                std::abs(tables.traces[s] * v_last));
  if (bootstrap_residual(tables, values) > 1e-9 * scale)
    throw std::logic_error("hl_batch_values: bootstrap identity violated");
  return values;
}

}  // namespace hl
