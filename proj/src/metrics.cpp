#include "hl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hl {

double rmse(std::span<const double> estimate, std::span<const double> truth) {
  if (estimate.size() != truth.size() || truth.empty())
    throw LengthMismatch("rmse: estimate and truth differ in size");
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = estimate[i] - truth[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(truth.size()));
}

std::size_t return_truncation(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in [0, 1)");
  if (gamma == 0.0) return 0;
  return static_cast<std::size_t>(std::ceil(std::log(1e-3) / std::log(gamma)));
}

std::vector<double> discounted_returns(std::span<const double> rewards, double gamma) {
  std::vector<double> v(rewards.size(), 0.0);
  double next = 0.0;
  for (std::size_t t = rewards.size(); t-- > 0;) {
    next = rewards[t] + gamma * next;
    v[t] = next;
  }
  return v;
}

std::vector<double> moving_average(std::span<const double> values, std::size_t window) {
  if (window == 0) throw std::invalid_argument("moving_average: window must be positive");
  std::vector<double> out(values.size(), 0.0);
  for (std::size_t t = 0; t < values.size(); ++t) {
    const std::size_t first = t + 1 >= window ? t + 1 - window : 0;
    double sum = 0.0;
    for (std::size_t k = first; k <= t; ++k) sum += values[k];
    out[t] = sum / static_cast<double>(t + 1 - first);
  }
  return out;
}

std::vector<double> smoothed_return_series(std::span<const double> rewards, double gamma,
                                           std::size_t window) {
  const std::size_t cut = return_truncation(gamma);
  if (rewards.size() <= cut)
    throw std::invalid_argument("smoothed_return_series: run shorter than the truncation horizon");
  std::vector<double> v = discounted_returns(rewards, gamma);
  v.resize(rewards.size() - cut);
  return moving_average(v, window);
}

AggregateResult aggregate(std::span<const MetricSeries> series) {
  if (series.empty()) throw LengthMismatch("aggregate: no series");
  std::vector<const MetricSeries*> ordered;
  ordered.reserve(series.size());
  for (const MetricSeries& s : series) ordered.push_back(&s);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const MetricSeries* a, const MetricSeries* b) { return a->run_index < b->run_index; });

  const std::size_t length = ordered.front()->values.size();
  const MetricKind kind = ordered.front()->kind;
  for (const MetricSeries* s : ordered) {
    if (s->values.size() != length) throw LengthMismatch("aggregate: series lengths differ");
    if (s->kind != kind) throw LengthMismatch("aggregate: series kinds differ");
  }

  const auto n = static_cast<double>(ordered.size());
  AggregateResult result;
  result.kind = kind;
  result.runs = ordered.size();
  result.mean.assign(length, 0.0);
  result.stderrs.assign(length, 0.0);
  for (const MetricSeries* s : ordered)
    for (std::size_t t = 0; t < length; ++t) result.mean[t] += s->values[t];
  for (double& m : result.mean) m /= n;
  if (ordered.size() > 1) {
    for (const MetricSeries* s : ordered) {
      for (std::size_t t = 0; t < length; ++t) {
        const double d = s->values[t] - result.mean[t];
        result.stderrs[t] += d * d;
      }
    }
    for (double& e : result.stderrs) e = std::sqrt(e / (n - 1.0) / n);
  }
  return result;
}

}  // namespace hl
