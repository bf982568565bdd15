#include "hl/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <variant>

#include "hl/control.hpp"
#include "hl/environments.hpp"
#include "hl/hl_predictor.hpp"
#include "hl/random.hpp"
#include "hl/td_predictor.hpp"
#include "hl/windy_gridworld.hpp"

namespace hl {

std::string_view to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::chain: return "chain";
    case EnvKind::random50: return "random50";
    case EnvKind::switching_chain: return "nonstat";
    case EnvKind::gridworld: return "gridworld";
  }
  return "chain";
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::hl: return "hl";
    case Algorithm::td: return "td";
    case Algorithm::hls: return "hls";
    case Algorithm::sarsa: return "sarsa";
    case Algorithm::watkins_q: return "watkins";
    case Algorithm::hlq: return "hlq";
  }
  return "hl";
}

EnvKind parse_env_kind(std::string_view name) {
  for (EnvKind k : {EnvKind::chain, EnvKind::random50, EnvKind::switching_chain, EnvKind::gridworld})
    if (name == to_string(k)) return k;
  throw std::invalid_argument("unknown environment '" + std::string(name) +
                              "' (expected chain, random50, nonstat or gridworld)");
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::hl, Algorithm::td, Algorithm::hls, Algorithm::sarsa,
                      Algorithm::watkins_q, Algorithm::hlq})
    if (name == to_string(a)) return a;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) +
                              "' (expected hl, td, hls, sarsa, watkins or hlq)");
}

bool is_control(Algorithm algorithm) {
  return algorithm != Algorithm::hl && algorithm != Algorithm::td;
}

bool is_controlled(EnvKind kind) { return kind == EnvKind::gridworld; }

namespace {

ControlAlgorithm control_algorithm(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::hls: return ControlAlgorithm::hls;
    case Algorithm::sarsa: return ControlAlgorithm::sarsa;
    case Algorithm::watkins_q: return ControlAlgorithm::watkins_q;
    case Algorithm::hlq: return ControlAlgorithm::hlq;
    default: throw std::invalid_argument("not a control algorithm");
  }
}

std::string num(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

}  // namespace

void ExperimentSpec::validate() const {
  if (steps == 0) throw std::invalid_argument("steps must be at least 1");
  if (runs == 0) throw std::invalid_argument("runs must be at least 1");
  if (window == 0) throw std::invalid_argument("window must be at least 1");
  const bool hl_rate = algo.algorithm == Algorithm::hl || algo.algorithm == Algorithm::hls ||
                       algo.algorithm == Algorithm::hlq;
  algo.discount.validate(/*allow_zero_lambda=*/!hl_rate);
  if (hl_rate && !(algo.pseudo_count >= 0.0))
    throw std::invalid_argument("pseudo-count must be non-negative");
  if (!hl_rate) algo.schedule.validate();
  if (is_control(algo.algorithm) != is_controlled(env.kind))
    throw std::invalid_argument(std::string("algorithm '") + std::string(to_string(algo.algorithm)) +
                                "' cannot run on environment '" + std::string(to_string(env.kind)) + "'");
  if (is_control(algo.algorithm)) {
    if (!(algo.epsilon >= 0.0 && algo.epsilon <= 1.0))
      throw std::invalid_argument("epsilon must lie in [0, 1]");
    if (steps <= return_truncation(algo.discount.gamma))
      throw std::invalid_argument("steps must exceed the return truncation horizon (" +
                                  std::to_string(return_truncation(algo.discount.gamma)) + ")");
  }
  if ((env.kind == EnvKind::chain || env.kind == EnvKind::switching_chain) &&
      (env.n < 3 || env.n % 2 == 0))
    throw std::invalid_argument("chain size must be odd and at least 3");
  if (env.kind == EnvKind::switching_chain && env.period == 0)
    throw std::invalid_argument("switching period must be positive");
}

std::vector<std::pair<std::string, std::string>> ExperimentSpec::describe() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("env", std::string(to_string(env.kind)));
  if (env.kind == EnvKind::chain || env.kind == EnvKind::switching_chain)
    out.emplace_back("n", std::to_string(env.n));
  if (env.kind == EnvKind::random50) out.emplace_back("env-seed", std::to_string(env.seed));
  if (env.kind == EnvKind::switching_chain) out.emplace_back("period", std::to_string(env.period));
  out.emplace_back("algo", std::string(to_string(algo.algorithm)));
  out.emplace_back("gamma", num(algo.discount.gamma));
  out.emplace_back("lambda", num(algo.discount.lambda));
  const Algorithm a = algo.algorithm;
  if (a == Algorithm::hl || a == Algorithm::hls || a == Algorithm::hlq)
    out.emplace_back("n0", num(algo.pseudo_count));
  else {
    out.emplace_back("schedule", std::string(to_string(algo.schedule.decay)));
    out.emplace_back("kappa", num(algo.schedule.kappa));
  }
  if (is_control(a)) {
    out.emplace_back("epsilon", num(algo.epsilon));
    out.emplace_back("window", std::to_string(window));
  }
  out.emplace_back("steps", std::to_string(steps));
  out.emplace_back("runs", std::to_string(runs));
  out.emplace_back("seed", std::to_string(master_seed));
  return out;
}

std::unique_ptr<Environment> make_environment(const EnvSpec& env) {
  switch (env.kind) {
    case EnvKind::chain: return std::make_unique<ChainProcess>(env.n);
    case EnvKind::random50: return std::make_unique<RandomMarkovProcess>(make_random_markov(env.seed));
    case EnvKind::switching_chain:
      return std::make_unique<SwitchingProcess>(make_switching_chain(env.n, env.period));
    case EnvKind::gridworld: return std::make_unique<WindyGridworld>();
  }
  throw std::invalid_argument("unknown environment");
}

PhaseTruth truth_for(const EnvSpec& env, double gamma) {
  PhaseTruth truth;
  if (env.kind == EnvKind::gridworld)
    throw std::invalid_argument("truth_for: controlled environments need a policy");
  if (env.kind == EnvKind::switching_chain) {
    const SwitchingProcess process = make_switching_chain(env.n, env.period);
    truth.period = env.period;
    truth.phases.push_back(exact_values(process.model_at(0), gamma));
    truth.phases.push_back(exact_values(process.model_at(env.period), gamma));
    return truth;
  }
  truth.phases.push_back(exact_values(make_environment(env)->exact_model(), gamma));
  return truth;
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void for_each_run(std::size_t runs, std::size_t workers,
                  const std::function<void(std::size_t)>& job) {
  const std::size_t threads = std::min(resolve_workers(workers), std::max<std::size_t>(runs, 1));
  std::vector<std::exception_ptr> errors(runs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < runs; i = next++) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<MetricSeries> run_prediction(const ExperimentSpec& spec, const PhaseTruth& truth) {
  spec.validate();
  if (is_control(spec.algo.algorithm))
    throw std::invalid_argument("run_prediction: control algorithm given");
  const std::unique_ptr<Environment> prototype = make_environment(spec.env);
  for (const TruthTable& t : truth.phases)
    if (t.values.size() != prototype->num_states())
      throw LengthMismatch("run_prediction: truth table does not match the environment");

  std::vector<MetricSeries> out(spec.runs);
  for_each_run(spec.runs, spec.workers, [&](std::size_t run) {
    std::unique_ptr<Environment> env = prototype->clone();
    Rng rng = seed_for_run(spec.master_seed, run);
    const std::size_t n = env->num_states();
    std::variant<HlPredictor, TdPredictor> predictor =
        spec.algo.algorithm == Algorithm::hl
            ? std::variant<HlPredictor, TdPredictor>(std::in_place_type<HlPredictor>, n,
                                                     spec.algo.discount,
                                                     HlOptions{spec.algo.pseudo_count, kTraceCutoff})
            : std::variant<HlPredictor, TdPredictor>(std::in_place_type<TdPredictor>, n,
                                                     spec.algo.discount, spec.algo.schedule);
    MetricSeries series;
    series.run_index = run;
    series.kind = MetricKind::rmse;
    series.values.resize(spec.steps);
    StateId s = env->start_state();
    for (std::size_t t = 0; t < spec.steps; ++t) {
      const std::vector<double>& target = truth.at(t).values;
      const StepResult step = env->step(s, 0, rng);
      series.values[t] = std::visit(
          [&](auto& p) {
            p.step({s, step.reward, step.next});
            return rmse(p.values(), target);
          },
          predictor);
      s = step.next;
    }
    out[run] = std::move(series);
  });
  return out;
}

std::vector<MetricSeries> run_control(const ExperimentSpec& spec) {
  spec.validate();
  if (!is_control(spec.algo.algorithm))
    throw std::invalid_argument("run_control: prediction algorithm given");
  const std::unique_ptr<Environment> prototype = make_environment(spec.env);

  AgentConfig config;
  config.algorithm = control_algorithm(spec.algo.algorithm);
  config.discount = spec.algo.discount;
  config.epsilon = spec.algo.epsilon;
  config.schedule = spec.algo.schedule;
  config.pseudo_count = spec.algo.pseudo_count;

  std::vector<MetricSeries> out(spec.runs);
  for_each_run(spec.runs, spec.workers, [&](std::size_t run) {
    std::unique_ptr<Environment> env = prototype->clone();
    Rng rng = seed_for_run(spec.master_seed, run);
    QAgent agent(env->num_states(), env->num_actions(), config);
    std::vector<double> rewards(spec.steps, 0.0);
    StateId s = env->start_state();
    ActionId a = agent.start(s, rng);
    for (std::size_t t = 0; t < spec.steps; ++t) {
      const StepResult step = env->step(s, a, rng);
      const ActionId a_next = agent.step(s, a, step.reward, step.next, rng);
      rewards[t] = step.reward;
      s = step.next;
      a = a_next;
    }
    MetricSeries series;
    series.run_index = run;
    series.kind = MetricKind::smoothed_return;
    series.values = smoothed_return_series(rewards, spec.algo.discount.gamma, spec.window);
    out[run] = std::move(series);
  });
  return out;
}

AggregateResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  if (is_control(spec.algo.algorithm)) return aggregate(run_control(spec));
  return aggregate(run_prediction(spec, truth_for(spec.env, spec.algo.discount.gamma)));
}

}  // namespace hl
