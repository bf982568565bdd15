#pragma once

#include <span>
#include <vector>

#include "hl/types.hpp"

namespace hl {

enum class MetricKind { rmse, smoothed_return };

struct MetricSeries {
  std::vector<double> values;
  std::size_t run_index = 0;
  MetricKind kind = MetricKind::rmse;
};

struct AggregateResult {
  std::vector<double> mean;
  std::vector<double> stderrs;
  MetricKind kind = MetricKind::rmse;
  std::size_t runs = 0;
};

/// sqrt(mean_s (estimate[s] - truth[s])^2).
double rmse(std::span<const double> estimate, std::span<const double> truth);

/// Steps dropped from the end of a return series: ceil(ln(1e-3) / ln gamma).
std::size_t return_truncation(double gamma);

/// v_t = r_t + gamma v_{t+1} over the recorded rewards (v after the last
/// reward is taken as 0).
std::vector<double> discounted_returns(std::span<const double> rewards, double gamma);

/// Trailing mean over the last `window` entries (fewer at the start).
std::vector<double> moving_average(std::span<const double> values, std::size_t window);

/// Discounted returns with the final return_truncation(gamma) entries dropped,
/// then smoothed by a trailing moving average.
std::vector<double> smoothed_return_series(std::span<const double> rewards, double gamma,
                                           std::size_t window);

/// Per-step mean and standard error across runs, folded in ascending
/// run-index order. Throws LengthMismatch on ragged or mixed-kind input.
AggregateResult aggregate(std::span<const MetricSeries> series);

}  // namespace hl
