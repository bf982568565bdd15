#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hl/environment_model.hpp"
#include "hl/groundtruth.hpp"
#include "hl/metrics.hpp"
#include "hl/schedule.hpp"
#include "hl/types.hpp"

namespace hl {

enum class EnvKind { chain, random50, switching_chain, gridworld };
enum class Algorithm { hl, td, hls, sarsa, watkins_q, hlq };

std::string_view to_string(EnvKind kind);
std::string_view to_string(Algorithm algorithm);
EnvKind parse_env_kind(std::string_view name);
Algorithm parse_algorithm(std::string_view name);
bool is_control(Algorithm algorithm);
bool is_controlled(EnvKind kind);

struct EnvSpec {
  EnvKind kind = EnvKind::chain;
  /// Chain length (chain, switching_chain).
  std::size_t n = 51;
  /// Generator seed for random50.
  std::uint64_t seed = 1;
  /// Steps per phase (switching_chain).
  std::uint64_t period = 5000;
};

struct AlgorithmSpec {
  Algorithm algorithm = Algorithm::hl;
  DiscountParams discount{};
  double pseudo_count = 1.0;
  double epsilon = 0.05;
  LearningRateSchedule schedule{};
};

struct ExperimentSpec {
  EnvSpec env{};
  AlgorithmSpec algo{};
  std::size_t steps = 1000;
  std::size_t runs = 1;
  std::uint64_t master_seed = 1;
  std::size_t window = 50;
  /// 0 means one worker per hardware thread.
  std::size_t workers = 0;
  std::filesystem::path output;

  MetricKind metric() const {
    return is_control(algo.algorithm) ? MetricKind::smoothed_return : MetricKind::rmse;
  }
  /// Throws std::invalid_argument on out-of-range or inconsistent settings.
  void validate() const;
  /// Flat key/value description of every resolved setting.
  std::vector<std::pair<std::string, std::string>> describe() const;
};

std::unique_ptr<Environment> make_environment(const EnvSpec& env);

/// Target values per environment phase; a stationary process has one phase.
struct PhaseTruth {
  std::vector<TruthTable> phases;
  std::uint64_t period = 0;

  const TruthTable& at(std::uint64_t t) const {
    return period == 0 ? phases.front() : phases[(t / period) % phases.size()];
  }
};

/// Exact values of every phase of an uncontrolled environment.
PhaseTruth truth_for(const EnvSpec& env, double gamma);

/// Calls `job(run_index)` for every run on up to `workers` threads. The first
/// exception (by run index) is rethrown after all workers finish.
void for_each_run(std::size_t runs, std::size_t workers, const std::function<void(std::size_t)>& job);

std::size_t resolve_workers(std::size_t requested);

/// One RMSE series per run; entry i is measured after transition i against
/// the truth of the phase that generated it.
std::vector<MetricSeries> run_prediction(const ExperimentSpec& spec, const PhaseTruth& truth);

/// One smoothed discounted-return series per run.
std::vector<MetricSeries> run_control(const ExperimentSpec& spec);

/// Dispatches on the algorithm and aggregates.
AggregateResult run_experiment(const ExperimentSpec& spec);

}  // namespace hl
