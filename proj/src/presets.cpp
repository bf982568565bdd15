#include "hl/presets.hpp"

#include <cstdio>
#include <stdexcept>

#include "hl/version.hpp"

namespace hl {

namespace {

std::string tag(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

ExperimentSpec base(EnvSpec env, std::size_t steps, std::size_t runs, std::uint64_t seed) {
  ExperimentSpec spec;
  spec.env = env;
  spec.steps = steps;
  spec.runs = runs;
  spec.master_seed = seed;
  return spec;
}

PresetEntry hl_entry(std::string prefix, ExperimentSpec spec, double gamma, double lambda) {
  spec.algo.algorithm = Algorithm::hl;
  spec.algo.discount = {gamma, lambda};
  spec.algo.pseudo_count = 1.0;
  return {prefix + "_hl_lambda" + tag(lambda), spec};
}

PresetEntry td_entry(std::string prefix, ExperimentSpec spec, double gamma, double lambda,
                     LearningRateSchedule schedule) {
  spec.algo.algorithm = Algorithm::td;
  spec.algo.discount = {gamma, lambda};
  spec.algo.schedule = schedule;
  return {prefix + "_td_" + std::string(to_string(schedule.decay)) + "_k" + tag(schedule.kappa) +
              "_lambda" + tag(lambda),
          spec};
}

PresetEntry control_entry(ExperimentSpec spec, Algorithm algorithm, double lambda, double epsilon,
                          std::optional<double> alpha) {
  spec.algo.algorithm = algorithm;
  spec.algo.discount = {0.99, lambda};
  spec.algo.epsilon = epsilon;
  std::string name = "gridworld_" + std::string(to_string(algorithm));
  if (alpha) {
    spec.algo.schedule = LearningRateSchedule::fixed(*alpha);
    name += "_a" + tag(*alpha);
  }
  name += "_lambda" + tag(lambda) + "_e" + tag(epsilon);
  return {name, spec};
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"chain51", "random50", "nonstat21", "gridworld"};
  return names;
}

std::vector<PresetEntry> make_preset(std::string_view preset, std::uint64_t seed,
                                     const PresetOverrides& overrides) {
  std::vector<PresetEntry> entries;
  const std::vector<double> td_lambdas{0.5, 0.8, 0.9};

  if (preset == "chain51") {
    const EnvSpec env{EnvKind::chain, 51, 1, 5000};
    // Fixed-rate grid, 10 runs.
    const ExperimentSpec fixed = base(env, 20000, 10, seed);
    entries.push_back(hl_entry("chain51", fixed, 0.99, 1.0));
    for (double alpha : {0.05, 0.1, 0.2})
      for (double lambda : td_lambdas)
        entries.push_back(td_entry("chain51", fixed, 0.99, lambda, LearningRateSchedule::fixed(alpha)));
    // Decaying-rate grid, 300 runs.
    const ExperimentSpec decaying = base(env, 20000, 300, seed);
    PresetEntry hl300 = hl_entry("chain51_decay", decaying, 0.99, 1.0);
    entries.push_back(hl300);
    for (Decay decay : {Decay::linear, Decay::square_root, Decay::cube_root})
      for (double kappa : {0.5, 1.0, 1.5, 2.0})
        for (double lambda : td_lambdas)
          entries.push_back(td_entry("chain51_decay", decaying, 0.99, lambda,
                                     LearningRateSchedule::power(kappa, decay)));
  } else if (preset == "random50") {
    const ExperimentSpec spec = base({EnvKind::random50, 50, seed, 5000}, 20000, 10, seed);
    entries.push_back(hl_entry("random50", spec, 0.9, 1.0));
    for (double lambda : {0.0, 0.5, 0.8, 0.9}) {
      entries.push_back(td_entry("random50", spec, 0.9, lambda, LearningRateSchedule::fixed(0.2)));
      entries.push_back(td_entry("random50", spec, 0.9, lambda,
                                 LearningRateSchedule::power(1.5, Decay::cube_root)));
    }
  } else if (preset == "nonstat21") {
    const ExperimentSpec spec = base({EnvKind::switching_chain, 21, 1, 5000}, 20000, 200, seed);
    entries.push_back(hl_entry("nonstat21", spec, 0.9, 0.9995));
    entries.push_back(hl_entry("nonstat21", spec, 0.9, 1.0));
    entries.push_back(td_entry("nonstat21", spec, 0.9, 0.8, LearningRateSchedule::fixed(0.05)));
  } else if (preset == "gridworld") {
    const ExperimentSpec spec = base({EnvKind::gridworld, 0, 1, 5000}, 50000, 500, seed);
    for (double epsilon : {0.01, 0.05, 0.1}) {
      entries.push_back(control_entry(spec, Algorithm::hls, 1.0, epsilon, std::nullopt));
      entries.push_back(control_entry(spec, Algorithm::hls, 0.99, epsilon, std::nullopt));
      entries.push_back(control_entry(spec, Algorithm::hlq, 1.0, epsilon, std::nullopt));
      for (double alpha : {0.1, 0.2, 0.4})
        for (double lambda : {0.5, 0.9}) {
          entries.push_back(control_entry(spec, Algorithm::sarsa, lambda, epsilon, alpha));
          entries.push_back(control_entry(spec, Algorithm::watkins_q, lambda, epsilon, alpha));
        }
    }
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(preset) +
                                "' (expected chain51, random50, nonstat21 or gridworld)");
  }

  for (PresetEntry& e : entries) {
    if (overrides.runs) e.spec.runs = *overrides.runs;
    if (overrides.steps) e.spec.steps = *overrides.steps;
    e.spec.workers = overrides.workers;
    e.spec.validate();
  }
  return entries;
}

Metadata csv_metadata(const ExperimentSpec& spec, std::string_view preset) {
  Metadata meta;
  meta.emplace_back("tool", std::string("hl-lab ") + kVersion);
  if (!preset.empty()) meta.emplace_back("preset", std::string(preset));
  for (auto& kv : spec.describe()) meta.push_back(std::move(kv));
  meta.emplace_back("metric", spec.metric() == MetricKind::rmse ? "rmse" : "smoothed_return");
  return meta;
}

std::vector<PresetResult> run_preset(std::string_view preset, std::uint64_t master_seed,
                                     const std::filesystem::path& out_dir,
                                     const PresetOverrides& overrides) {
  const std::vector<PresetEntry> entries = make_preset(preset, master_seed, overrides);
  std::filesystem::create_directories(out_dir);
  std::vector<PresetResult> results;
  results.reserve(entries.size());
  for (const PresetEntry& e : entries) {
    AggregateResult result = run_experiment(e.spec);
    csv_write(result, out_dir / (e.name + ".csv"), csv_metadata(e.spec, preset));
    results.push_back({e.name, e.spec, std::move(result)});
  }
  return results;
}

}  // namespace hl
