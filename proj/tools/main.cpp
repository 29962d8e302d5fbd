#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "saea/config.hpp"
#include "saea/harness.hpp"
#include "saea/probe.hpp"
#include "saea/theory.hpp"

namespace {

using saea::ConfigEntry;

double parse_double_strict(const std::string& v, const std::string& key,
                           const std::string& where) {
  try {
    std::size_t pos = 0;
    const double r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return r;
  } catch (const std::exception&) {
    throw std::invalid_argument(where + ": bad value '" + v + "' for key '" + key + "'");
  }
}

long long parse_int_strict(const std::string& v, const std::string& key,
                           const std::string& where) {
  try {
    std::size_t pos = 0;
    const long long r = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return r;
  } catch (const std::exception&) {
    throw std::invalid_argument(where + ": bad value '" + v + "' for key '" + key + "'");
  }
}

std::uint64_t parse_u64_strict(const std::string& v, const std::string& key,
                               const std::string& where) {
  try {
    std::size_t pos = 0;
    const std::uint64_t r = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return r;
  } catch (const std::exception&) {
    throw std::invalid_argument(where + ": bad value '" + v + "' for key '" + key + "'");
  }
}

bool parse_bool_strict(const std::string& v, const std::string& key,
                       const std::string& where) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument(where + ": bad value '" + v + "' for key '" + key +
                              "' (expected true|false|1|0)");
}

// Registers options on one subcommand and applies config-file overlays with
// the precedence: CLI flag > config file > built-in default.
class Registry {
 public:
  explicit Registry(CLI::App* cmd) : cmd_(cmd) {}

  void add_double(const std::string& name, double& var, const std::string& desc) {
    bind(name, cmd_->add_option("--" + name, var, desc)->capture_default_str(),
         [&var](const std::string& v, const std::string& key, const std::string& w) {
           var = parse_double_strict(v, key, w);
         });
  }

  void add_int(const std::string& name, int& var, const std::string& desc) {
    bind(name, cmd_->add_option("--" + name, var, desc)->capture_default_str(),
         [&var](const std::string& v, const std::string& key, const std::string& w) {
           var = static_cast<int>(parse_int_strict(v, key, w));
         });
  }

  void add_i64(const std::string& name, std::int64_t& var, const std::string& desc) {
    bind(name, cmd_->add_option("--" + name, var, desc)->capture_default_str(),
         [&var](const std::string& v, const std::string& key, const std::string& w) {
           var = parse_int_strict(v, key, w);
         });
  }

  void add_u64(const std::string& name, std::uint64_t& var, const std::string& desc) {
    bind(name, cmd_->add_option("--" + name, var, desc)->capture_default_str(),
         [&var](const std::string& v, const std::string& key, const std::string& w) {
           var = parse_u64_strict(v, key, w);
         });
  }

  void add_string(const std::string& name, std::string& var, const std::string& desc) {
    bind(name, cmd_->add_option("--" + name, var, desc)->capture_default_str(),
         [&var](const std::string& v, const std::string&, const std::string&) {
           var = v;
         });
  }

  void add_bool(const std::string& name, bool& var, const std::string& desc) {
    bind(name, cmd_->add_flag("--" + name, var, desc),
         [&var](const std::string& v, const std::string& key, const std::string& w) {
           var = parse_bool_strict(v, key, w);
         });
  }

  void apply(const std::vector<ConfigEntry>& entries, const std::string& path) {
    for (const auto& e : entries) {
      const auto it = bindings_.find(e.key);
      const std::string where = path + ":" + std::to_string(e.line);
      if (it == bindings_.end()) {
        throw std::invalid_argument(where + ": unknown key '" + e.key + "'");
      }
      if (it->second.opt->count() > 0) continue;  // CLI flag wins
      it->second.set(e.value, e.key, where);
      from_config_.insert(e.key);
    }
  }

  bool present(const std::string& name) const {
    const auto it = bindings_.find(name);
    return it != bindings_.end() &&
           (it->second.opt->count() > 0 || from_config_.contains(name));
  }

  void require(const std::string& name) const {
    if (!present(name)) {
      throw std::invalid_argument("missing required flag --" + name);
    }
  }

 private:
  struct Binding {
    CLI::Option* opt;
    std::function<void(const std::string&, const std::string&, const std::string&)> set;
  };

  void bind(const std::string& name, CLI::Option* opt,
            std::function<void(const std::string&, const std::string&, const std::string&)> set) {
    bindings_[name] = Binding{opt, std::move(set)};
  }

  CLI::App* cmd_;
  std::map<std::string, Binding> bindings_;
  std::set<std::string> from_config_;
};

// One flat bag of flag values; each subcommand registers the subset it uses.
struct Opts {
  std::string function;
  int n = 0;
  int k = 0;
  std::string mutation = "sbm";
  double chi = 1.0;
  double beta = 2.0;
  double rate = 0.0;
  bool shared_chi = false;
  double F = 1.5;
  double s = 1.0;
  bool elitist = false;
  double lambda_init = 1.0;
  int trials = 20;
  std::int64_t budget_evals = 10'000'000;
  std::uint64_t seed = 1;
  int workers = 0;
  std::int64_t trajectory_stride = 0;
  std::string out;
  std::string config_path;
  double epsilon = 0.0;
  double gamma = 0.0;
  double c = 2.0;
  std::string n_values;
  std::string k_values;
  std::int64_t samples = 10'000;
  int points_per_level = 2;
  double condition_max_lambda = 0.0;
  std::int64_t target_samples = 10'000;
};

struct Command {
  CLI::App* app = nullptr;
  Registry* reg = nullptr;
};

void add_function_opts(Registry& r, Opts& o) {
  r.add_string("function", o.function, "Benchmark: onemax|leadingones|onemaxblocks");
  r.add_int("n", o.n, "Problem size");
  r.add_int("k", o.k, "Block size (onemaxblocks only)");
}

void add_mutation_opts(Registry& r, Opts& o) {
  r.add_string("mutation", o.mutation, "Mutation operator: sbm|heavytailed");
  r.add_double("chi", o.chi, "Standard bit mutation rate is chi/n");
  r.add_double("beta", o.beta, "Heavy-tailed power-law exponent (> 1)");
  r.add_double("rate", o.rate, "Explicit mutation rate overriding chi/n (literal real)");
  r.add_bool("shared-chi", o.shared_chi,
             "Heavy-tailed: share one strength draw per generation");
}

void add_algo_opts(Registry& r, Opts& o) {
  r.add_double("F", o.F, "Update strength (> 1)");
  r.add_double("s", o.s, "Success rate (> 0)");
  r.add_bool("elitist", o.elitist, "Plus selection instead of comma selection");
  r.add_double("lambda-init", o.lambda_init, "Initial offspring population size (>= 1)");
}

void add_config_opt(Registry& r, Opts& o) {
  r.add_string("config", o.config_path,
               "Config file (key=value per line, keys are flag names)");
}

saea::MutationSpec build_mutation(const Registry& reg, const Opts& o) {
  saea::MutationSpec spec;
  if (o.mutation == "sbm") {
    spec.kind = saea::MutationKind::kStandard;
  } else if (o.mutation == "heavytailed") {
    spec.kind = saea::MutationKind::kHeavyTailed;
  } else {
    throw std::invalid_argument("--mutation must be sbm or heavytailed");
  }
  spec.chi = o.chi;
  spec.beta = o.beta;
  spec.shared_strength = o.shared_chi;
  if (reg.present("rate")) spec.explicit_rate = o.rate;
  return spec;
}

saea::AlgorithmParams build_params(const Registry& reg, const Opts& o) {
  saea::AlgorithmParams p;
  p.update_strength = o.F;
  p.success_rate = o.s;
  p.elitist = o.elitist;
  p.lambda_init = o.lambda_init;
  p.mutation = build_mutation(reg, o);
  return p;
}

saea::FitnessFunction build_function(const Registry& reg, const Opts& o) {
  reg.require("function");
  reg.require("n");
  return saea::FitnessFunction::by_name(o.function, o.n, o.k);
}

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<int> values;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    values.push_back(
        static_cast<int>(parse_int_strict(item, flag, "flag --" + flag)));
  }
  if (values.empty()) throw std::invalid_argument("--" + flag + ": empty list");
  return values;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void apply_config_if_any(Registry& reg, const Opts& o) {
  if (!o.config_path.empty()) reg.apply(saea::load_config_file(o.config_path), o.config_path);
}

int cmd_run(Registry& reg, const Opts& o) {
  apply_config_if_any(reg, o);
  saea::ExperimentConfig cfg;
  cfg.function = o.function;
  cfg.n = o.n;
  cfg.k = o.k;
  cfg.params = build_params(reg, o);
  cfg.trials = o.trials;
  cfg.budget_evals = o.budget_evals;
  cfg.base_seed = o.seed;
  cfg.trajectory_stride = o.trajectory_stride;
  cfg.out_dir = o.out;
  cfg.workers = o.workers;
  reg.require("function");
  reg.require("n");

  const saea::BatchResult result = saea::run_batch(cfg);
  std::cout << saea::summary_csv(result.summary);
  return 0;
}

int cmd_sweep(Registry& reg, const Opts& o) {
  apply_config_if_any(reg, o);
  if (!reg.present("n-values") && !reg.present("k-values")) {
    throw std::invalid_argument("missing required flag --n-values (or --k-values)");
  }
  saea::ExperimentConfig tmpl;
  tmpl.function = o.function;
  tmpl.n = o.n;
  tmpl.k = o.k;
  tmpl.params = build_params(reg, o);
  tmpl.trials = o.trials;
  tmpl.budget_evals = o.budget_evals;
  tmpl.base_seed = o.seed;
  tmpl.workers = o.workers;
  tmpl.out_dir = o.out;
  reg.require("function");

  std::vector<int> n_values;
  if (reg.present("n-values")) {
    n_values = parse_int_list(o.n_values, "n-values");
  } else {
    reg.require("n");
    n_values = {o.n};
  }
  std::vector<int> k_values;
  if (reg.present("k-values")) k_values = parse_int_list(o.k_values, "k-values");

  const saea::ScalingTable table = saea::scaling_study(tmpl, n_values, k_values);
  std::cout << saea::scaling_csv(table);
  std::cout << "# loglog_slope_median_evaluations," << fmt(table.loglog_slope_evaluations)
            << "\n";
  for (const auto& row : table.rows) {
    // k-normalized evaluations: evals * k / (n^2 ln k); k <= 1 uses evals / n^2.
    const double norm = row.k > 1 ? row.median_evaluations * row.k /
                                        (static_cast<double>(row.n) * row.n *
                                         std::log(static_cast<double>(row.k)))
                                  : row.evals_per_n2;
    std::cout << "# evals_k_normalized," << row.n << ',' << row.k << ',' << fmt(norm)
              << "\n";
  }
  return 0;
}

int cmd_bounds(Registry& reg, const Opts& o) {
  apply_config_if_any(reg, o);
  const saea::FitnessFunction f = build_function(reg, o);
  const saea::MutationSpec spec = build_mutation(reg, o);
  saea::TheoryContext ctx = saea::make_context(f, spec, o.s, o.F);
  if (reg.present("gamma")) ctx.gamma = o.gamma;
  if (reg.present("epsilon")) ctx.epsilon = o.epsilon;

  std::cout << "name,value\n";
  const auto row = [](const std::string& name, double v) {
    std::cout << name << ',' << fmt(v) << '\n';
  };
  row("n", ctx.n);
  row("d", ctx.d);
  row("F", ctx.F);
  row("s", ctx.s);
  row("gamma", ctx.gamma);
  row("epsilon", ctx.epsilon);
  row("p_min", ctx.p_min);
  row("p_max", ctx.p_max);
  row("lambda_safe", saea::lambda_safe(ctx));
  row("lambda_threshold", saea::lambda_threshold(ctx));
  row("generation_bound", saea::generation_bound(ctx));
  row("fitness_level_sum", saea::fitness_level_sum(ctx));
  row("elitist_evaluation_bound", saea::elitist_evaluation_bound(0, ctx.d, o.lambda_init, ctx));
  row("expected_lambda_limit", saea::expected_lambda_bound(1'000'000, o.lambda_init, ctx));
  return 0;
}

int cmd_probe(Registry& reg, const Opts& o) {
  apply_config_if_any(reg, o);
  const saea::FitnessFunction f = build_function(reg, o);
  const saea::MutationSpec spec = build_mutation(reg, o);
  const double epsilon = reg.present("epsilon") ? o.epsilon : saea::default_epsilon(f, spec);

  saea::RngStream rng(o.seed);
  const saea::HardnessReport report = saea::probe_everywhere_hardness(
      f, spec, o.points_per_level, o.samples, epsilon, o.c, rng);

  std::ostringstream csv;
  csv << "level,p_plus,p_plus_hw,p_minus,p_minus_hw,samples\n";
  for (const auto& e : report.levels) {
    csv << e.level << ',' << fmt(e.p_plus) << ',' << fmt(e.p_plus_hw) << ','
        << fmt(e.p_minus) << ',' << fmt(e.p_minus_hw) << ',' << e.samples << '\n';
  }

  std::ostringstream verdict;
  verdict << "verdict: " << saea::to_string(report.verdict)
          << " (max_p_plus=" << fmt(report.max_p_plus)
          << ", threshold=" << fmt(report.threshold)
          << ", levels_covered=" << report.levels.size()
          << ", levels_uncovered=" << report.uncovered_levels.size() << ")\n";

  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    std::ofstream file(std::filesystem::path(o.out) / "probe.csv", std::ios::binary);
    if (!file) throw std::runtime_error("cannot write probe.csv under " + o.out);
    file << csv.str();
    std::cout << verdict.str();
  } else {
    std::cout << csv.str();
    std::cerr << verdict.str();
  }
  return 0;
}

int cmd_drift(Registry& reg, const Opts& o) {
  apply_config_if_any(reg, o);
  const saea::FitnessFunction f = build_function(reg, o);
  const saea::AlgorithmParams params = build_params(reg, o);
  double condition = o.condition_max_lambda;
  if (!reg.present("condition-max-lambda")) {
    const double epsilon =
        reg.present("epsilon") ? o.epsilon : saea::default_epsilon(f, params.mutation);
    condition = std::pow(static_cast<double>(o.n), epsilon / 2.0);
  }

  const saea::DriftEstimate est =
      saea::estimate_lambda_drift(f, params, condition, o.target_samples, o.seed);
  std::cout << "conditioning,mean_drift,half_width,samples,conclusive\n";
  std::cout << '"' << est.conditioning << "\"," << fmt(est.mean_drift) << ','
            << fmt(est.half_width) << ',' << est.samples << ','
            << (est.conclusive ? 1 : 0) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-elitist (1,lambda) EA with success-based offspring population "
               "control: batch runner, theory bounds, hardness and drift probes",
               "saea"};
  app.require_subcommand(1);

  Opts o;

  CLI::App* run = app.add_subcommand("run", "Run a batch of independent trials");
  Registry run_reg(run);
  add_function_opts(run_reg, o);
  add_mutation_opts(run_reg, o);
  add_algo_opts(run_reg, o);
  run_reg.add_int("trials", o.trials, "Number of independent trials");
  run_reg.add_i64("budget-evals", o.budget_evals, "Evaluation budget per trial");
  run_reg.add_u64("seed", o.seed, "Base seed; trial i uses trial_seed(seed, i)");
  run_reg.add_int("workers", o.workers, "Worker threads (0 = available parallelism)");
  run_reg.add_i64("trajectory-stride", o.trajectory_stride,
                  "Sample (generation,fitness,lambda) every this many generations (0 = off)");
  run_reg.add_string("out", o.out, "Output directory for records.csv / summary.csv");
  add_config_opt(run_reg, o);

  CLI::App* sweep = app.add_subcommand("sweep", "Scaling study over n (or k) grids");
  Registry sweep_reg(sweep);
  add_function_opts(sweep_reg, o);
  add_mutation_opts(sweep_reg, o);
  add_algo_opts(sweep_reg, o);
  sweep_reg.add_string("n-values", o.n_values, "Comma-separated problem sizes");
  sweep_reg.add_string("k-values", o.k_values, "Comma-separated block sizes (onemaxblocks)");
  sweep_reg.add_int("trials", o.trials, "Trials per grid point");
  sweep_reg.add_i64("budget-evals", o.budget_evals, "Evaluation budget per trial");
  sweep_reg.add_u64("seed", o.seed, "Base seed for grid-point seed derivation");
  sweep_reg.add_int("workers", o.workers, "Worker threads (0 = available parallelism)");
  sweep_reg.add_string("out", o.out, "Output directory for scaling.csv");
  add_config_opt(sweep_reg, o);

  CLI::App* bounds = app.add_subcommand("bounds", "Print closed-form bounds as name,value CSV");
  Registry bounds_reg(bounds);
  add_function_opts(bounds_reg, o);
  add_mutation_opts(bounds_reg, o);
  bounds_reg.add_double("F", o.F, "Update strength (> 1)");
  bounds_reg.add_double("s", o.s, "Success rate (> 0)");
  bounds_reg.add_double("lambda-init", o.lambda_init, "Initial offspring population size");
  bounds_reg.add_double("gamma", o.gamma, "Override the copy-probability bound gamma");
  bounds_reg.add_double("epsilon", o.epsilon, "Override the hardness exponent epsilon");
  add_config_opt(bounds_reg, o);

  CLI::App* probe = app.add_subcommand("probe", "Everywhere-hardness probe (per-level p+/p-)");
  Registry probe_reg(probe);
  add_function_opts(probe_reg, o);
  add_mutation_opts(probe_reg, o);
  probe_reg.add_double("epsilon", o.epsilon, "Hardness exponent (default: derived)");
  probe_reg.add_double("c", o.c, "Hardness threshold constant: verdicts compare to c*n^-epsilon");
  probe_reg.add_i64("samples", o.samples, "Offspring samples per probed point");
  probe_reg.add_int("points-per-level", o.points_per_level,
                    "Hill-climb restarts (points collected per covered level)");
  probe_reg.add_u64("seed", o.seed, "Probe seed");
  probe_reg.add_string("out", o.out, "Output directory for probe.csv");
  add_config_opt(probe_reg, o);

  CLI::App* drift = app.add_subcommand("drift", "Empirical drift of log_F(lambda) below a threshold");
  Registry drift_reg(drift);
  add_function_opts(drift_reg, o);
  add_mutation_opts(drift_reg, o);
  add_algo_opts(drift_reg, o);
  drift_reg.add_double("condition-max-lambda", o.condition_max_lambda,
                       "Condition on lambda <= this (default: n^(epsilon/2))");
  drift_reg.add_double("epsilon", o.epsilon, "Hardness exponent for the default condition");
  drift_reg.add_i64("target-samples", o.target_samples, "Conditioned generations to collect");
  drift_reg.add_u64("seed", o.seed, "Base seed for restarts");
  add_config_opt(drift_reg, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return cmd_run(run_reg, o);
    if (sweep->parsed()) return cmd_sweep(sweep_reg, o);
    if (bounds->parsed()) return cmd_bounds(bounds_reg, o);
    if (probe->parsed()) return cmd_probe(probe_reg, o);
    if (drift->parsed()) return cmd_drift(drift_reg, o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "saea: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "saea: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
