#include "saea/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace saea {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

}  // namespace

FitnessFunction ExperimentConfig::make_function() const {
  return FitnessFunction::by_name(function, n, k);
}

void ExperimentConfig::validate() const {
  make_function();
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (budget_evals < n) throw std::invalid_argument("budget-evals must be >= n");
  if (trajectory_stride < 0) throw std::invalid_argument("trajectory-stride must be >= 0");
  if (workers < 0) throw std::invalid_argument("workers must be >= 0");
  params.validate(n);
}

MetricStats stats_of(std::vector<double> values) {
  MetricStats s;
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  s.median = median_of(values);
  double ss = 0.0;
  for (const double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std_dev = values.size() > 1 ? std::sqrt(ss / (values.size() - 1)) : 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

BatchSummary summarize(const std::vector<RunRecord>& records,
                       const ExperimentConfig& cfg) {
  BatchSummary s;
  s.trials = static_cast<int>(records.size());
  if (records.empty()) return s;

  std::vector<double> gens, evals, fitness, lambdas;
  int successes = 0;
  for (const auto& r : records) {
    gens.push_back(static_cast<double>(r.generations));
    evals.push_back(static_cast<double>(r.evaluations));
    fitness.push_back(static_cast<double>(r.final_fitness));
    lambdas.push_back(r.max_lambda);
    successes += r.success ? 1 : 0;
  }
  s.success_rate = static_cast<double>(successes) / records.size();
  s.generations = stats_of(std::move(gens));
  s.evaluations = stats_of(std::move(evals));
  s.final_fitness = stats_of(std::move(fitness));
  s.max_lambda = stats_of(std::move(lambdas));

  const FitnessFunction f = cfg.make_function();
  s.gen_per_d = s.generations.mean / f.d();
  if (f.kind() != FitnessFunction::Kind::kCustom) {
    TheoryContext ctx = make_context(f, cfg.params.mutation, cfg.params.success_rate,
                                     cfg.params.update_strength);
    s.evals_per_level_sum = s.evaluations.mean / fitness_level_sum(ctx);
  }
  return s;
}

BatchResult run_batch(const ExperimentConfig& cfg) {
  cfg.validate();

  BatchResult result;
  result.records.resize(static_cast<std::size_t>(cfg.trials));

  int workers = cfg.workers > 0
                    ? cfg.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, cfg.trials);

  std::atomic<int> next{0};
  const auto worker = [&] {
    const FitnessFunction f = cfg.make_function();
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= cfg.trials) break;
      result.records[static_cast<std::size_t>(i)] =
          run_to_optimum(f, cfg.params, cfg.budget_evals,
                         trial_seed(cfg.base_seed, static_cast<std::uint64_t>(i)),
                         cfg.trajectory_stride, i);
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  result.summary = summarize(result.records, cfg);

  if (!cfg.out_dir.empty()) {
    const std::filesystem::path dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() +
                                     ": " + ec.message());
    write_file(dir / "records.csv", records_csv(result.records));
    write_file(dir / "summary.csv", summary_csv(result.summary));
    if (cfg.trajectory_stride > 0) {
      for (const auto& r : result.records) {
        char name[48];
        std::snprintf(name, sizeof(name), "trajectory_%04d.csv", r.trial);
        write_file(dir / name, trajectory_csv(r));
      }
    }
  }
  return result;
}

std::string records_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "trial,seed,success,generations,evaluations,final_fitness,max_lambda,time_ms\n";
  for (const auto& r : records) {
    out << r.trial << ',' << r.seed << ',' << (r.success ? 1 : 0) << ','
        << r.generations << ',' << r.evaluations << ',' << r.final_fitness << ','
        << fmt_double(r.max_lambda) << ',';
    char ms[32];
    std::snprintf(ms, sizeof(ms), "%.3f", r.time_ms);
    out << ms << '\n';
  }
  return out.str();
}

std::string summary_csv(const BatchSummary& s) {
  std::ostringstream out;
  out << "metric,mean,median,std,min,max\n";
  const auto metric = [&out](const std::string& name, const MetricStats& m) {
    out << name << ',' << fmt_double(m.mean) << ',' << fmt_double(m.median) << ','
        << fmt_double(m.std_dev) << ',' << fmt_double(m.min) << ','
        << fmt_double(m.max) << '\n';
  };
  const auto scalar = [&out](const std::string& name, double v) {
    const std::string s = fmt_double(v);
    out << name << ',' << s << ',' << s << ",0," << s << ',' << s << '\n';
  };
  scalar("success_rate", s.success_rate);
  metric("generations", s.generations);
  metric("evaluations", s.evaluations);
  metric("final_fitness", s.final_fitness);
  metric("max_lambda", s.max_lambda);
  scalar("gen_per_d", s.gen_per_d);
  scalar("evals_per_level_sum", s.evals_per_level_sum);
  return out.str();
}

std::string trajectory_csv(const RunRecord& record) {
  std::ostringstream out;
  out << "generation,fitness,lambda\n";
  for (const auto& p : record.trajectory) {
    out << p.generation << ',' << p.fitness << ',' << fmt_double(p.lambda_real)
        << '\n';
  }
  return out.str();
}

std::vector<RunRecord> parse_records_csv(const std::string& text) {
  std::vector<RunRecord> records;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("records csv: empty input");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    RunRecord r;
    const auto next_field = [&]() -> std::string {
      if (!std::getline(row, field, ',')) {
        throw std::invalid_argument("records csv: short row '" + line + "'");
      }
      return field;
    };
    r.trial = std::stoi(next_field());
    r.seed = std::stoull(next_field());
    r.success = next_field() == "1";
    r.generations = std::stoll(next_field());
    r.evaluations = std::stoll(next_field());
    r.final_fitness = std::stoi(next_field());
    r.max_lambda = std::stod(next_field());
    r.time_ms = std::stod(next_field());
    records.push_back(std::move(r));
  }
  return records;
}

ScalingTable scaling_study(const ExperimentConfig& tmpl,
                           const std::vector<int>& n_values,
                           const std::vector<int>& k_values) {
  const auto distinct = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return std::unique(v.begin(), v.end()) - v.begin();
  };
  if (k_values.empty() ? distinct(n_values) < 3
                       : distinct(n_values) < 1 || distinct(k_values) < 3) {
    throw std::invalid_argument("scaling study needs >= 3 distinct n (or k) values");
  }

  ScalingTable table;
  std::vector<double> log_n, log_evals;
  for (const int n : n_values) {
    for (const int k : k_values.empty() ? std::vector<int>{tmpl.k} : k_values) {
      ExperimentConfig cfg = tmpl;
      cfg.n = n;
      cfg.k = k;
      cfg.out_dir.clear();
      cfg.base_seed = stream_seed(
          tmpl.base_seed, (static_cast<std::uint64_t>(n) << 20) |
                              static_cast<std::uint64_t>(std::max(k, 0)));
      const BatchResult batch = run_batch(cfg);

      ScalingRow row;
      row.n = n;
      row.k = k;
      row.trials = cfg.trials;
      row.median_generations = batch.summary.generations.median;
      row.median_evaluations = batch.summary.evaluations.median;
      row.gen_per_n = row.median_generations / n;
      row.evals_per_n2 = row.median_evaluations / (static_cast<double>(n) * n);
      row.success_rate = batch.summary.success_rate;
      table.rows.push_back(row);
    }
  }

  const int slope_k = table.rows.front().k;
  for (const auto& row : table.rows) {
    if (row.k == slope_k) {
      log_n.push_back(std::log(static_cast<double>(row.n)));
      log_evals.push_back(std::log(row.median_evaluations));
    }
  }
  if (distinct(n_values) >= 2) {
    const double mx = std::accumulate(log_n.begin(), log_n.end(), 0.0) / log_n.size();
    const double my =
        std::accumulate(log_evals.begin(), log_evals.end(), 0.0) / log_evals.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
      sxy += (log_n[i] - mx) * (log_evals[i] - my);
      sxx += (log_n[i] - mx) * (log_n[i] - mx);
    }
    table.loglog_slope_evaluations = sxy / sxx;
  } else {
    table.loglog_slope_evaluations = std::nan("");
  }

  if (!tmpl.out_dir.empty()) {
    const std::filesystem::path dir(tmpl.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory " + dir.string() +
                                     ": " + ec.message());
    write_file(dir / "scaling.csv", scaling_csv(table));
  }
  return table;
}

std::string scaling_csv(const ScalingTable& table) {
  std::ostringstream out;
  out << "n,k,trials,median_generations,median_evaluations,gen_per_n,evals_per_n2,"
         "success_rate\n";
  for (const auto& r : table.rows) {
    out << r.n << ',' << r.k << ',' << r.trials << ','
        << fmt_double(r.median_generations) << ',' << fmt_double(r.median_evaluations)
        << ',' << fmt_double(r.gen_per_n) << ',' << fmt_double(r.evals_per_n2) << ','
        << fmt_double(r.success_rate) << '\n';
  }
  return out.str();
}

std::vector<BoundCheck> compare_to_bounds(const BatchResult& batch,
                                          const ExperimentConfig& cfg,
                                          const TheoryContext& ctx) {
  if (batch.summary.success_rate < 1.0) {
    throw std::invalid_argument("compare_to_bounds: batch contains failed runs");
  }
  std::vector<BoundCheck> checks;
  const auto push = [&checks](std::string metric, double empirical, double bound) {
    BoundCheck c{std::move(metric), empirical, bound, empirical / bound, false};
    c.violated = c.ratio > 1.0;
    checks.push_back(std::move(c));
  };

  if (cfg.params.elitist) {
    push("mean_evaluations_vs_elitist_bound", batch.summary.evaluations.mean,
         elitist_evaluation_bound(0, ctx.d, cfg.params.lambda_init, ctx));
  } else {
    push("mean_generations_vs_generation_bound", batch.summary.generations.mean,
         generation_bound(ctx));

    if (cfg.trajectory_stride == 1) {
      std::int64_t min_completion = batch.records.front().generations;
      for (const auto& r : batch.records) {
        min_completion = std::min(min_completion, r.generations);
      }
      for (std::int64_t t = 1; t < min_completion; t *= 2) {
        double sum = 0.0;
        for (const auto& r : batch.records) {
          sum += r.trajectory[static_cast<std::size_t>(t)].lambda_real;
        }
        push("mean_lambda_at_t=" + std::to_string(t), sum / batch.records.size(),
             expected_lambda_bound(t, cfg.params.lambda_init, ctx));
      }
    }
  }
  return checks;
}

}  // namespace saea
