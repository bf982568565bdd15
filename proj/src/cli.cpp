#include "hl/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hl/csv.hpp"
#include "hl/environments.hpp"
#include "hl/experiment.hpp"
#include "hl/groundtruth.hpp"
#include "hl/model_io.hpp"
#include "hl/presets.hpp"
#include "hl/random.hpp"
#include "hl/types.hpp"
#include "hl/version.hpp"

namespace hl {

namespace {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Raw flag values shared by the subcommands; only the relevant ones are bound.
struct Flags {
  std::string config;
  std::string env = "chain";
  std::size_t n = 51;
  std::optional<std::uint64_t> env_seed;
  std::uint64_t period = 5000;
  std::string algo;
  double lambda = 1.0;
  std::optional<double> gamma;
  double n0 = 1.0;
  double epsilon = 0.05;
  std::string schedule = "fixed";
  double kappa = 0.1;
  std::size_t steps = 20000;
  std::size_t runs = 10;
  std::uint64_t seed = 1;
  std::size_t window = 50;
  std::optional<std::size_t> workers;
  std::string out;
  std::string out_dir;

  // truth
  std::string method = "exact";
  std::size_t rollouts = 1000;
  std::string phase = "a";
  std::string model_out;

  // sweep
  std::vector<double> lambdas;
  std::vector<double> kappas;
  std::vector<double> epsilons;

  // repro
  std::string preset;
  std::optional<std::size_t> runs_override;
  std::optional<std::size_t> steps_override;
};

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

// Values from the config file fill every option the command line left unset.
void apply_config(CLI::App& sub, const std::string& path) {
  for (const auto& [key, value] : read_config(path)) {
    if (key == "config") throw ConfigError("config files cannot include other config files");
    CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr)
      throw ConfigError("unknown key '" + key + "' in config file '" + path + "' for '" +
                        sub.get_name() + "'");
    if (opt->count() > 0) continue;
    try {
      opt->add_result(value);
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
}

std::size_t resolve_worker_flag(const std::optional<std::size_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("HL_WORKERS"); env != nullptr && *env != '\0') {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(env, &pos);
      if (pos != std::string(env).size()) throw std::invalid_argument("trailing characters");
      return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw ConfigError(std::string("HL_WORKERS must be a non-negative integer, got '") + env + "'");
    }
  }
  return 0;
}

double require_gamma(const Flags& f) {
  if (!f.gamma) throw ConfigError("--gamma is required");
  return *f.gamma;
}

EnvSpec env_spec(const Flags& f) {
  EnvSpec env;
  env.kind = parse_env_kind(f.env);
  env.n = f.n;
  env.seed = f.env_seed.value_or(f.seed);
  env.period = f.period;
  return env;
}

ExperimentSpec experiment_spec(const Flags& f, Algorithm algorithm) {
  ExperimentSpec spec;
  spec.env = env_spec(f);
  spec.algo.algorithm = algorithm;
  spec.algo.discount = {require_gamma(f), f.lambda};
  spec.algo.pseudo_count = f.n0;
  spec.algo.epsilon = f.epsilon;
  spec.algo.schedule = {parse_decay(f.schedule), f.kappa};
  spec.steps = f.steps;
  spec.runs = f.runs;
  spec.master_seed = f.seed;
  spec.window = f.window;
  spec.workers = resolve_worker_flag(f.workers);
  spec.output = f.out;
  spec.validate();
  return spec;
}

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty())
    out << contents;
  else
    write_file_atomically(path, contents);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void add_env_flags(CLI::App& sub, Flags& f) {
  sub.add_option("--env", f.env, "Environment: chain, random50, nonstat (switching chain), gridworld")
      ->check(CLI::IsMember({"chain", "random50", "nonstat", "gridworld"}));
  sub.add_option("--n", f.n, "Chain length (odd, >= 3)");
  sub.add_option("--env-seed", f.env_seed,
                 "Generator seed for random50 [default: same as --seed]");
  sub.add_option("--period", f.period, "Steps per phase of the switching chain");
}

void add_run_flags(CLI::App& sub, Flags& f) {
  sub.add_option("--lambda", f.lambda, "Trace decay lambda");
  sub.add_option("--gamma", f.gamma, "Discount factor gamma in [0, 1) [required]");
  sub.add_option("--n0", f.n0, "Initial visit pseudo-count (hl, hls, hlq)");
  sub.add_option("--schedule", f.schedule, "Learning-rate decay: fixed, cbrt, sqrt, linear")
      ->check(CLI::IsMember({"fixed", "cbrt", "sqrt", "linear"}));
  sub.add_option("--kappa", f.kappa, "Learning-rate scale; the rate is kappa / t^p");
  sub.add_option("--steps", f.steps, "Transitions per run");
  sub.add_option("--runs", f.runs, "Independent runs");
  sub.add_option("--seed", f.seed, "Master seed");
  sub.add_option("--workers", f.workers,
                 "Worker threads; 0 means one per processor [default: HL_WORKERS, else 0]");
}

void finish_help(CLI::App& sub, Flags& f) {
  sub.add_option("--config", f.config,
                 "Flat key=value file mirroring flag names; explicit flags win");
  for (CLI::Option* opt : sub.get_options()) opt->capture_default_str();
}

int run_truth(const Flags& f, std::ostream& out) {
  const double gamma = require_gamma(f);
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in [0, 1)");
  if (f.method != "exact" && f.method != "mc") throw ConfigError("--method must be exact or mc");
  if (f.method == "mc" && f.rollouts == 0) throw ConfigError("--rollouts must be at least 1");
  const EnvSpec env = env_spec(f);
  if ((env.kind == EnvKind::chain || env.kind == EnvKind::switching_chain) &&
      (env.n < 3 || env.n % 2 == 0))
    throw ConfigError("chain size must be odd and at least 3");
  if (f.phase != "a" && f.phase != "b") throw ConfigError("--phase must be a or b");

  EnvironmentModel model = [&] {
    if (env.kind == EnvKind::switching_chain) {
      const SwitchingProcess process = make_switching_chain(env.n, env.period);
      return process.model_at(f.phase == "a" ? 0 : env.period);
    }
    return make_environment(env)->exact_model();
  }();

  std::vector<double> policy;
  if (model.num_actions() > 1)
    policy.assign(model.num_states() * model.num_actions(), 1.0 / double(model.num_actions()));

  TruthTable table;
  if (f.method == "exact") {
    table = exact_values(model, gamma, policy);
  } else {
    Rng rng(f.seed);
    table = mc_values(model, gamma, f.rollouts, rng, policy);
  }

  std::ostringstream csv;
  csv << "# tool=hl-lab " << kVersion << "\n# env=" << to_string(env.kind) << "\n";
  if (env.kind == EnvKind::chain || env.kind == EnvKind::switching_chain) csv << "# n=" << env.n << "\n";
  if (env.kind == EnvKind::random50) csv << "# env-seed=" << env.seed << "\n";
  if (env.kind == EnvKind::switching_chain) csv << "# phase=" << f.phase << "\n";
  if (model.num_actions() > 1) csv << "# policy=uniform\n";
  csv << "# gamma=" << fmt(gamma) << "\n# method=" << f.method << "\n";
  if (f.method == "mc") csv << "# rollouts=" << f.rollouts << "\n# seed=" << f.seed << "\n";
  csv << (table.stderrs.empty() ? "state,value\n" : "state,value,stderr\n");
  for (std::size_t s = 0; s < table.values.size(); ++s) {
    csv << s << ',' << fmt(table.values[s]);
    if (!table.stderrs.empty()) csv << ',' << fmt(table.stderrs[s]);
    csv << '\n';
  }

  if (!f.model_out.empty()) {
    std::ostringstream model_text;
    write_model(model_text, model);
    write_file_atomically(f.model_out, model_text.str());
  }
  emit(f.out, csv.str(), out);
  return kExitOk;
}

int run_single(const Flags& f, bool control, std::ostream& out) {
  if (f.algo.empty()) throw ConfigError("--algo is required");
  const Algorithm algorithm = parse_algorithm(f.algo);
  if (is_control(algorithm) != control)
    throw ConfigError("algorithm '" + f.algo + "' belongs to the " +
                      (control ? "predict" : "control") + " subcommand");
  const ExperimentSpec spec = experiment_spec(f, algorithm);
  const AggregateResult result = run_experiment(spec);
  emit(f.out, csv_render(result, csv_metadata(spec)), out);
  return kExitOk;
}

int run_sweep(const Flags& f, std::ostream& out) {
  if (f.algo.empty()) throw ConfigError("--algo is required");
  if (f.out_dir.empty()) throw ConfigError("--out-dir is required");
  const Algorithm algorithm = parse_algorithm(f.algo);
  const std::vector<double> lambdas = f.lambdas.empty() ? std::vector<double>{f.lambda} : f.lambdas;
  const std::vector<double> kappas = f.kappas.empty() ? std::vector<double>{f.kappa} : f.kappas;
  const std::vector<double> epsilons =
      f.epsilons.empty() || !is_control(algorithm) ? std::vector<double>{f.epsilon} : f.epsilons;
  const bool hl_rate = algorithm == Algorithm::hl || algorithm == Algorithm::hls ||
                       algorithm == Algorithm::hlq;

  // Validate the whole grid before running anything.
  std::vector<std::pair<std::string, ExperimentSpec>> grid;
  for (double epsilon : epsilons)
    for (double kappa : hl_rate ? std::vector<double>{f.kappa} : kappas)
      for (double lambda : lambdas) {
        Flags g = f;
        g.lambda = lambda;
        g.kappa = kappa;
        g.epsilon = epsilon;
        ExperimentSpec spec = experiment_spec(g, algorithm);
        std::string name = f.algo;
        if (!hl_rate) name += "_" + f.schedule + "_k" + fmt(kappa);
        name += "_lambda" + fmt(lambda);
        if (is_control(algorithm)) name += "_e" + fmt(epsilon);
        grid.emplace_back(std::move(name), std::move(spec));
      }

  std::filesystem::create_directories(f.out_dir);
  out << "config,final_mean,final_stderr\n";
  for (const auto& [name, spec] : grid) {
    const AggregateResult result = run_experiment(spec);
    csv_write(result, std::filesystem::path(f.out_dir) / (name + ".csv"), csv_metadata(spec));
    out << name << ',' << fmt(result.mean.back()) << ',' << fmt(result.stderrs.back()) << '\n';
  }
  return kExitOk;
}

int run_repro(const Flags& f, std::ostream& out) {
  PresetOverrides overrides;
  overrides.runs = f.runs_override;
  overrides.steps = f.steps_override;
  overrides.workers = resolve_worker_flag(f.workers);
  const std::string dir = f.out_dir.empty() ? "repro-" + f.preset : f.out_dir;
  // Resolve (and validate) the preset before touching the filesystem.
  make_preset(f.preset, f.seed, overrides);
  out << "config,final_mean,final_stderr\n";
  for (const PresetResult& r : run_preset(f.preset, f.seed, dir, overrides))
    out << r.name << ',' << fmt(r.result.mean.back()) << ',' << fmt(r.result.stderrs.back()) << '\n';
  return kExitOk;
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Temporal-difference learning with HL(lambda) learning rates", "hl-lab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CLI::App* truth = app.add_subcommand("truth", "Print the true value of every state as CSV");
  add_env_flags(*truth, f);
  truth->add_option("--gamma", f.gamma, "Discount factor gamma in [0, 1) [required]");
  truth->add_option("--method", f.method, "exact (linear solve) or mc (Monte Carlo)")
      ->check(CLI::IsMember({"exact", "mc"}));
  truth->add_option("--rollouts", f.rollouts, "Monte Carlo rollouts per state");
  truth->add_option("--phase", f.phase, "Phase of the switching chain: a or b")
      ->check(CLI::IsMember({"a", "b"}));
  truth->add_option("--seed", f.seed, "Seed for Monte Carlo and the random50 generator");
  truth->add_option("--model-out", f.model_out, "Also write the exact model as a plain-text matrix");
  truth->add_option("--out", f.out, "Output CSV path [default: standard output]");
  truth->footer("Gridworld values are for the uniform random policy.");
  finish_help(*truth, f);

  CLI::App* predict = app.add_subcommand("predict", "Run a prediction experiment (hl or td)");
  add_env_flags(*predict, f);
  predict->add_option("--algo", f.algo, "Algorithm: hl or td [required]")
      ->check(CLI::IsMember({"hl", "td"}));
  add_run_flags(*predict, f);
  predict->add_option("--out", f.out, "Output CSV path [default: standard output]");
  finish_help(*predict, f);

  CLI::App* control = app.add_subcommand("control", "Run a control experiment on the gridworld");
  control->add_option("--env", f.env, "Environment (only gridworld)")
      ->check(CLI::IsMember({"gridworld"}));
  control->add_option("--algo", f.algo, "Algorithm: hls, sarsa, watkins or hlq [required]")
      ->check(CLI::IsMember({"hls", "sarsa", "watkins", "hlq"}));
  add_run_flags(*control, f);
  control->add_option("--epsilon", f.epsilon, "Exploration rate of the epsilon-greedy policy");
  control->add_option("--window", f.window, "Moving-average window of the smoothed return");
  control->add_option("--out", f.out, "Output CSV path [default: standard output]");
  finish_help(*control, f);

  CLI::App* sweep = app.add_subcommand("sweep", "Run a grid of configurations, one CSV each");
  add_env_flags(*sweep, f);
  sweep->add_option("--algo", f.algo, "Algorithm: hl, td, hls, sarsa, watkins or hlq [required]")
      ->check(CLI::IsMember({"hl", "td", "hls", "sarsa", "watkins", "hlq"}));
  add_run_flags(*sweep, f);
  sweep->add_option("--epsilon", f.epsilon, "Exploration rate when --epsilons is not given");
  sweep->add_option("--window", f.window, "Moving-average window of the smoothed return");
  sweep->add_option("--lambdas", f.lambdas, "Comma-separated lambda grid [default: --lambda]")
      ->delimiter(',');
  sweep->add_option("--kappas", f.kappas, "Comma-separated kappa grid [default: --kappa]")
      ->delimiter(',');
  sweep->add_option("--epsilons", f.epsilons, "Comma-separated epsilon grid [default: --epsilon]")
      ->delimiter(',');
  sweep->add_option("--out-dir", f.out_dir, "Directory receiving one CSV per configuration [required]");
  finish_help(*sweep, f);

  CLI::App* repro = app.add_subcommand("repro", "Reproduce one of the reference experiments");
  repro->add_option("preset", f.preset, "chain51, random50, nonstat21 or gridworld")
      ->required()
      ->check(CLI::IsMember(preset_names()));
  repro->add_option("--seed", f.seed, "Master seed");
  repro->add_option("--runs", f.runs_override, "Override the preset's run count");
  repro->add_option("--steps", f.steps_override, "Override the preset's transitions per run");
  repro->add_option("--workers", f.workers,
                    "Worker threads; 0 means one per processor [default: HL_WORKERS, else 0]");
  repro->add_option("--out-dir", f.out_dir, "Output directory [default: repro-<preset>]");
  finish_help(*repro, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (!f.config.empty()) apply_config(*sub, f.config);
    if (sub == truth) return run_truth(f, out);
    if (sub == predict) return run_single(f, false, out);
    if (sub == control) {
      f.env = "gridworld";
      return run_single(f, true, out);
    }
    if (sub == sweep) return run_sweep(f, out);
    return run_repro(f, out);
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const IoError& e) {
    err << "i/o failure: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o failure: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }
}

int parse_and_dispatch(int argc, const char* const* argv) {
  return parse_and_dispatch(argc, argv, std::cout, std::cerr);
}

}  // namespace hl
