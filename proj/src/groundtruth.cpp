#include "hl/groundtruth.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hl {

namespace {

void check_policy(const EnvironmentModel& model, std::span<const double> policy) {
  if (policy.empty()) {
    if (model.num_actions() != 1)
      throw std::invalid_argument("a policy is required for a model with several actions");
    return;
  }
  if (policy.size() != model.num_states() * model.num_actions())
    throw std::invalid_argument("policy must have num_states x num_actions entries");
}

double action_prob(const EnvironmentModel& model, std::span<const double> policy, StateId s,
                   ActionId a) {
  return policy.empty() ? 1.0 : policy[s * model.num_actions() + a];
}

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in [0, 1)");
}

}  // namespace

InducedChain induced_chain(const EnvironmentModel& model, std::span<const double> policy) {
  check_policy(model, policy);
  const std::size_t n = model.num_states();
  InducedChain chain{std::vector<double>(n * n, 0.0), std::vector<double>(n, 0.0)};
  for (StateId s = 0; s < n; ++s) {
    for (ActionId a = 0; a < model.num_actions(); ++a) {
      const double pa = action_prob(model, policy, s, a);
      if (pa == 0.0) continue;
      for (const Outcome& o : model.outcomes(s, a)) {
        chain.transitions[s * n + o.next] += pa * o.probability;
        chain.rewards[s] += pa * o.probability * o.reward;
      }
    }
  }
  return chain;
}

double bellman_residual(const EnvironmentModel& model, double gamma, std::span<const double> values,
                        std::span<const double> policy) {
  const InducedChain chain = induced_chain(model, policy);
  const std::size_t n = model.num_states();
  double worst = 0.0;
  for (StateId s = 0; s < n; ++s) {
    double backup = chain.rewards[s];
    for (StateId j = 0; j < n; ++j) backup += gamma * chain.transitions[s * n + j] * values[j];
    worst = std::max(worst, std::abs(values[s] - backup));
  }
  return worst;
}

TruthTable exact_values(const EnvironmentModel& model, double gamma, std::span<const double> policy) {
  check_gamma(gamma);
  const InducedChain chain = induced_chain(model, policy);
  const auto n = static_cast<Eigen::Index>(model.num_states());

  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    rhs(i) = chain.rewards[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < n; ++j)
      system(i, j) -= gamma * chain.transitions[static_cast<std::size_t>(i * n + j)];
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  const Eigen::VectorXd solution = lu.solve(rhs);

  TruthTable table;
  table.method = TruthMethod::exact;
  table.values.assign(solution.data(), solution.data() + n);
  if (!std::all_of(table.values.begin(), table.values.end(), [](double v) { return std::isfinite(v); }))
    throw SingularSystem("exact_values: non-finite solution");
  const double scale = std::max(1.0, solution.cwiseAbs().maxCoeff());
  const double residual = (system * solution - rhs).cwiseAbs().maxCoeff();
  if (residual > 1e-10 * scale)
    throw SingularSystem("exact_values: residual " + std::to_string(residual) + " too large");
  return table;
}

std::size_t mc_horizon(double gamma) {
  check_gamma(gamma);
  if (gamma == 0.0) return 1;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log(1e-6) / std::log(gamma))));
}

TruthTable mc_values(const EnvironmentModel& model, double gamma, std::size_t rollouts_per_state,
                     Rng& rng, std::span<const double> policy) {
  check_policy(model, policy);
  if (rollouts_per_state == 0) throw std::invalid_argument("mc_values: need at least one rollout");
  const std::size_t horizon = mc_horizon(gamma);
  const std::size_t n = model.num_states();
  const std::size_t m = model.num_actions();

  auto pick_action = [&](StateId s) -> ActionId {
    if (policy.empty()) return 0;
    double u = rng.uniform();
    for (ActionId a = 0; a + 1 < m; ++a) {
      u -= policy[s * m + a];
      if (u < 0.0) return a;
    }
    return m - 1;
  };

  TruthTable table;
  table.method = TruthMethod::monte_carlo;
  table.values.assign(n, 0.0);
  table.stderrs.assign(n, 0.0);
  const auto count = static_cast<double>(rollouts_per_state);
  for (StateId start = 0; start < n; ++start) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < rollouts_per_state; ++k) {
      StateId s = start;
      double ret = 0.0;
      double discount = 1.0;
      for (std::size_t u = 0; u < horizon; ++u) {
        const StepResult step = model.sample(s, pick_action(s), rng);
        ret += discount * step.reward;
        discount *= gamma;
        s = step.next;
      }
      sum += ret;
      sum_sq += ret * ret;
    }
    const double mean = sum / count;
    table.values[start] = mean;
    if (rollouts_per_state > 1) {
      const double var = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));
      table.stderrs[start] = std::sqrt(var / count);
    }
  }
  return table;
}

}  // namespace hl
