// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance 5 8        run the listed criteria only

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hl/csv.hpp"
#include "hl/environments.hpp"
#include "hl/experiment.hpp"
#include "hl/groundtruth.hpp"
#include "hl/hl_batch.hpp"
#include "hl/hl_predictor.hpp"
#include "hl/presets.hpp"
#include "hl/random.hpp"

using namespace hl;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  std::function<Verdict()> run;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

// Runs the preset entries whose names start with one of `prefixes`.
std::map<std::string, AggregateResult> run_entries(const std::string& preset,
                                                   const std::vector<std::string>& prefixes,
                                                   const PresetOverrides& overrides = {}) {
  std::map<std::string, AggregateResult> out;
  for (const PresetEntry& e : make_preset(preset, 1, overrides)) {
    const bool wanted = std::any_of(prefixes.begin(), prefixes.end(),
                                    [&](const std::string& p) { return starts_with(e.name, p); });
    if (wanted) out.emplace(e.name, run_experiment(e.spec));
  }
  return out;
}

struct Best {
  std::string name;
  double value;
};

Best best_of(const std::map<std::string, AggregateResult>& results, const std::string& prefix,
             bool lowest) {
  Best best{"", lowest ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity()};
  for (const auto& [name, r] : results) {
    if (!starts_with(name, prefix)) continue;
    const double v = r.mean.back();
    if (lowest ? v < best.value : v > best.value) best = {name, v};
  }
  return best;
}

struct Trajectory {
  std::vector<StateId> states;
  std::vector<double> rewards;
};

Trajectory random_trajectory(Rng& rng, std::size_t num_states, std::size_t length) {
  Trajectory t;
  for (std::size_t k = 0; k < length; ++k) t.states.push_back(rng.below(num_states));
  for (std::size_t k = 0; k + 1 < length; ++k) t.rewards.push_back(rng.uniform(-1.0, 1.0));
  return t;
}

// The same 500-trajectory corpus feeds the exactness and bootstrap criteria.
struct CorpusItem {
  Trajectory trajectory;
  std::size_t num_states;
  DiscountParams params;
};

std::vector<CorpusItem> corpus() {
  Rng rng(20240917);
  const double gammas[] = {0.0, 0.5, 0.9, 0.99};
  const double lambdas[] = {1.0, 0.99, 0.9};
  std::vector<CorpusItem> items;
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + rng.below(10);
    const std::size_t length = 2 + rng.below(99);
    CorpusItem item{random_trajectory(rng, n, length), n,
                    {gammas[rng.below(4)], lambdas[rng.below(3)]}};
    items.push_back(std::move(item));
  }
  return items;
}

Verdict exactness() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const CorpusItem& c : corpus()) {
    HlPredictor p(c.num_states, c.params);
    const auto& s = c.trajectory.states;
    for (std::size_t k = 0; k + 1 < s.size(); ++k) p.step({s[k], c.trajectory.rewards[k], s[k + 1]});
    const auto batch = hl_batch_values(s, c.trajectory.rewards, c.params, 1.0, c.num_states);
    for (std::size_t x = 0; x < c.num_states; ++x)
      worst = std::max(worst, std::abs(p.value(x) - batch[x]));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-8 && secs < 10.0,
          fmt("max |incremental - batch| = %.3g (tol 1e-8), %.2f s (limit 10 s)", worst, secs)};
}

Verdict bootstrap() {
  double worst = 0.0;
  for (const CorpusItem& c : corpus()) {
    const auto& t = c.trajectory;
    const BatchTables tables = hl_batch_tables(t.states, t.rewards, c.params, 1.0, c.num_states);
    const auto values = hl_batch_values(t.states, t.rewards, c.params, 1.0, c.num_states);
    worst = std::max(worst, bootstrap_residual(tables, values));
  }
  return {worst <= 1e-9, fmt("max |V N - R - E V_last| = %.3g (tol 1e-9)", worst)};
}

Verdict zero_discount() {
  Rng rng(77);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rng.below(5);
    const std::size_t length = 1 + rng.below(100);
    HlPredictor p(n, {0.0, 1.0}, {1.0, kTraceCutoff});
    std::vector<double> sum(n, 0.0), count(n, 0.0);
    for (std::size_t k = 0; k < length; ++k) {
      const StateId s = rng.below(n);
      const double r = rng.uniform(-1.0, 1.0);
      p.step({s, r, rng.below(n)});
      sum[s] += r;
      count[s] += 1.0;
    }
    for (StateId s = 0; s < n; ++s)
      worst = std::max(worst, std::abs(p.value(s) - sum[s] / (count[s] + 1.0)));
  }
  return {worst <= 1e-12, fmt("max |V - sum r / (n + 1)| = %.3g (tol 1e-12)", worst)};
}

Verdict truth_cross_check() {
  const auto start = std::chrono::steady_clock::now();
  const ChainProcess chain(51);
  const EnvironmentModel& model = chain.exact_model();
  const TruthTable exact = exact_values(model, 0.99);
  const double residual = bellman_residual(model, 0.99, exact.values);
  Rng rng(4);
  const TruthTable mc = mc_values(model, 0.99, 1000, rng);
  std::size_t outside = 0;
  double worst_z = 0.0;
  for (std::size_t s = 0; s < exact.values.size(); ++s) {
    const double gap = std::abs(mc.values[s] - exact.values[s]);
    // Truncation allowance, for states whose returns have no spread.
    const double band = 4.0 * mc.stderrs[s] + 1e-6 / (1.0 - 0.99);
    if (gap > band) ++outside;
    if (mc.stderrs[s] > 0) worst_z = std::max(worst_z, gap / mc.stderrs[s]);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {outside == 0 && residual <= 1e-9 && secs < 60.0,
          fmt("%zu/51 states outside 4 stderr (max z %.2f), Bellman residual %.3g (tol 1e-9), %.1f s",
              outside, worst_z, residual, secs)};
}

Verdict chain_fixed_rates() {
  const auto r = run_entries("chain51", {"chain51_hl", "chain51_td_fixed"});
  const double hl = r.at("chain51_hl_lambda1").mean.back();
  const Best td = best_of(r, "chain51_td_fixed", true);
  return {hl <= td.value, fmt("HL(1) %.5f vs best TD %.5f (%s), 10 runs", hl, td.value, td.name.c_str())};
}

Verdict chain_decaying_rates() {
  const auto r = run_entries("chain51", {"chain51_decay_hl", "chain51_decay_td_cbrt"});
  const double hl = r.at("chain51_decay_hl_lambda1").mean.back();
  const Best td = best_of(r, "chain51_decay_td_cbrt", true);
  return {td.value >= 0.95 * hl, fmt("best cbrt TD %.5f (%s) vs 0.95 x HL(1) = %.5f, 300 runs", td.value,
                                     td.name.c_str(), 0.95 * hl)};
}

Verdict random_process() {
  const auto r = run_entries("random50", {"random50"});
  const double hl = r.at("random50_hl_lambda1").mean.back();
  const Best fixed = best_of(r, "random50_td_fixed_k0.2", true);
  const Best cbrt = best_of(r, "random50_td_cbrt_k1.5", true);
  return {hl <= fixed.value && hl <= cbrt.value,
          fmt("HL(1) %.5f vs best fixed 0.2 TD %.5f (%s), best 1.5/cbrt(t) TD %.5f (%s)", hl, fixed.value,
              fixed.name.c_str(), cbrt.value, cbrt.name.c_str())};
}

Verdict switching_chain() {
  PresetOverrides o;
  o.runs = 100;
  const auto r = run_entries("nonstat21", {"nonstat21_hl"}, o);
  const auto& forgetting = r.at("nonstat21_hl_lambda0.9995").mean;
  const auto& stationary = r.at("nonstat21_hl_lambda1").mean;
  constexpr std::size_t period = 5000;

  auto tail_mean = [&](const std::vector<double>& m) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t phase = 1; phase < 4; ++phase)
      for (std::size_t i = (phase + 1) * period - 2500; i < (phase + 1) * period; ++i, ++count)
        sum += m[i];
    return sum / double(count);
  };
  // Pre-switch level: mean over the 100 steps before the switch.
  // Spike: peak over the 100 steps after it.
  auto spikes = [&](const std::vector<double>& m, std::string& text) {
    bool all = true;
    for (std::size_t k = 1; k < 4; ++k) {
      const std::size_t sw = k * period;
      double pre = 0.0;
      for (std::size_t i = sw - 100; i < sw; ++i) pre += m[i] / 100.0;
      const double peak = *std::max_element(m.begin() + sw, m.begin() + sw + 100);
      const bool ok = peak >= 2.0 * pre;
      all = all && ok;
      text += fmt(" [t=%zu pre %.4f peak %.4f %s]", sw, pre, peak, ok ? "ok" : "no");
    }
    return all;
  };

  const double tail_f = tail_mean(forgetting);
  const double tail_s = tail_mean(stationary);
  std::string spike_f, spike_s;
  const bool ok_f = spikes(forgetting, spike_f);
  const bool ok_s = spikes(stationary, spike_s);
  return {tail_f < tail_s && ok_f && ok_s,
          fmt("tail HL(0.9995) %.5f vs HL(1) %.5f; spikes HL(0.9995):", tail_f, tail_s) + spike_f +
              " HL(1):" + spike_s};
}

const std::map<std::string, AggregateResult>& gridworld_results() {
  static const std::map<std::string, AggregateResult> results = [] {
    PresetOverrides o;
    o.runs = 100;
    return run_entries("gridworld", {"gridworld"}, o);
  }();
  return results;
}

Verdict gridworld_hls() {
  const auto& r = gridworld_results();
  const Best hls = best_of(r, "gridworld_hls_lambda1_", false);
  const Best sarsa = best_of(r, "gridworld_sarsa", false);
  return {hls.value > 5.0 && hls.value >= sarsa.value,
          fmt("best HLS(1) %.4f (%s) vs threshold 5.0 and best Sarsa %.4f (%s), 100 runs", hls.value,
              hls.name.c_str(), sarsa.value, sarsa.name.c_str())};
}

Verdict gridworld_hlq() {
  const auto& r = gridworld_results();
  const Best hlq = best_of(r, "gridworld_hlq", false);
  const Best watkins = best_of(r, "gridworld_watkins", false);
  return {hlq.value >= 0.95 * watkins.value,
          fmt("best HLQ(1) %.4f (%s) vs 0.95 x best Watkins %.4f = %.4f (%s), 100 runs", hlq.value,
              hlq.name.c_str(), watkins.value, 0.95 * watkins.value, watkins.name.c_str())};
}

std::map<std::string, std::string> read_dir(const std::filesystem::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    files[e.path().filename().string()] = ss.str();
  }
  return files;
}

Verdict determinism() {
  const auto root = std::filesystem::temp_directory_path() / "hl_acceptance_determinism";
  std::filesystem::remove_all(root);
  bool all = true;
  std::string text;
  for (const std::string& preset : preset_names()) {
    PresetOverrides o;
    o.runs = 4;
    o.steps = 1500;
    o.workers = 1;
    run_preset(preset, 1, root / (preset + "_a"), o);
    run_preset(preset, 1, root / (preset + "_b"), o);
    o.workers = 4;
    run_preset(preset, 1, root / (preset + "_c"), o);
    const auto a = read_dir(root / (preset + "_a"));
    const bool repeat = a == read_dir(root / (preset + "_b"));
    const bool workers = a == read_dir(root / (preset + "_c"));
    all = all && repeat && workers && !a.empty();
    text += fmt(" %s: %zu files, rerun %s, 1 vs 4 workers %s;", preset.c_str(), a.size(),
                repeat ? "identical" : "DIFFERENT", workers ? "identical" : "DIFFERENT");
  }
  std::filesystem::remove_all(root);
  return {all, "4 runs x 1500 steps per configuration:" + text};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "incremental HL equals the closed-form estimator", exactness},
      {2, "closed-form estimate satisfies the bootstrap identity", bootstrap},
      {3, "gamma = 0 reduces HL to a shrunk running mean", zero_discount},
      {4, "exact and Monte Carlo ground truth agree", truth_cross_check},
      {5, "chain51: HL(1) beats every fixed-rate TD", chain_fixed_rates},
      {6, "chain51: best cbrt-decay TD no better than 0.95 x HL(1)", chain_decaying_rates},
      {7, "random50: HL(1) beats tuned TD", random_process},
      {8, "nonstat21: forgetting helps and switches cause spikes", switching_chain},
      {9, "gridworld: HLS(1) above 5.0 and above best Sarsa", gridworld_hls},
      {10, "gridworld: HLQ(1) within 0.95 of best Watkins Q", gridworld_hlq},
      {11, "repro presets are deterministic", determinism},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::printf("[%s] criterion %d: %s -- %s\n", v.pass ? "PASS" : "FAIL", c.id, c.title, v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
