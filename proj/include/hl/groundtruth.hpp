#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "hl/environment_model.hpp"
#include "hl/random.hpp"

namespace hl {

enum class TruthMethod { exact, monte_carlo };

struct TruthTable {
  std::vector<double> values;
  TruthMethod method = TruthMethod::exact;
  /// Per-state standard error; empty for exact tables.
  std::vector<double> stderrs;
};

/// Policy-induced Markov chain: P_pi(s,s') and expected one-step reward.
/// `policy` is row-major num_states x num_actions; it may be empty when the
/// model has a single action.
struct InducedChain {
  std::vector<double> transitions;  // row-major n x n
  std::vector<double> rewards;      // r_bar per state
};
InducedChain induced_chain(const EnvironmentModel& model, std::span<const double> policy = {});

/// Solves (I - gamma P) V = r_bar by LU with partial pivoting. Throws
/// SingularSystem if the solve fails or the residual exceeds 1e-10 relative to
/// the value scale.
TruthTable exact_values(const EnvironmentModel& model, double gamma,
                        std::span<const double> policy = {});

/// Max-norm of V - (r_bar + gamma P V).
double bellman_residual(const EnvironmentModel& model, double gamma, std::span<const double> values,
                        std::span<const double> policy = {});

/// Smallest H with gamma^H < 1e-6 (at least 1).
std::size_t mc_horizon(double gamma);

/// Averages truncated discounted returns over `rollouts_per_state` rollouts
/// started from every state.
TruthTable mc_values(const EnvironmentModel& model, double gamma, std::size_t rollouts_per_state,
                     Rng& rng, std::span<const double> policy = {});

}  // namespace hl
