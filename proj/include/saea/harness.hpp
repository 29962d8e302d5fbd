#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "saea/algorithm.hpp"
#include "saea/theory.hpp"

namespace saea {

struct ExperimentConfig {
  std::string function = "leadingones";
  int n = 128;
  int k = 0;  // onemaxblocks only
  AlgorithmParams params;
  int trials = 20;
  std::int64_t budget_evals = 10'000'000;
  std::uint64_t base_seed = 1;
  std::int64_t trajectory_stride = 0;
  std::string out_dir;  // empty: nothing is written
  int workers = 0;      // 0: hardware concurrency

  FitnessFunction make_function() const;
  void validate() const;
};

struct MetricStats {
  double mean = 0.0;
  double median = 0.0;
  double std_dev = 0.0;
  double min = 0.0;
  double max = 0.0;
};

MetricStats stats_of(std::vector<double> values);

struct BatchSummary {
  int trials = 0;
  double success_rate = 0.0;
  MetricStats generations;
  MetricStats evaluations;
  MetricStats final_fitness;
  MetricStats max_lambda;
  double gen_per_d = 0.0;            // mean generations / d
  double evals_per_level_sum = 0.0;  // mean evaluations / fitness_level_sum
};

struct BatchResult {
  std::vector<RunRecord> records;
  BatchSummary summary;
};

// Runs cfg.trials independent runs; trial i is fully determined by
// trial_seed(base_seed, i). Writes records.csv / summary.csv (and per-trial
// trajectory files when trajectory_stride > 0) under out_dir if set.
BatchResult run_batch(const ExperimentConfig& cfg);

/// Pure aggregation; run_batch's summary is exactly summarize(records, cfg).
BatchSummary summarize(const std::vector<RunRecord>& records,
                       const ExperimentConfig& cfg);

// CSV surfaces. Doubles are printed with 17 significant digits so that
// parsing them back reproduces the exact values.
std::string records_csv(const std::vector<RunRecord>& records);
std::string summary_csv(const BatchSummary& summary);
std::string trajectory_csv(const RunRecord& record);
std::vector<RunRecord> parse_records_csv(const std::string& text);

struct ScalingRow {
  int n = 0;
  int k = 0;
  int trials = 0;
  double median_generations = 0.0;
  double median_evaluations = 0.0;
  double gen_per_n = 0.0;
  double evals_per_n2 = 0.0;
  double success_rate = 0.0;
};

struct ScalingTable {
  std::vector<ScalingRow> rows;
  // Least-squares slope of ln(median evaluations) vs ln(n) over rows sharing
  // the first row's k; NaN when fewer than two distinct n.
  double loglog_slope_evaluations = 0.0;
};

// Grid study over n_values (x k_values if given, for onemaxblocks). Each grid
// point runs a full batch whose base seed is derived from the template seed
// and the grid coordinates. Requires at least 3 distinct n (or k) values.
ScalingTable scaling_study(const ExperimentConfig& tmpl,
                           const std::vector<int>& n_values,
                           const std::vector<int>& k_values = {});

std::string scaling_csv(const ScalingTable& table);

struct BoundCheck {
  std::string metric;
  double empirical = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  bool violated = false;
};

// Compares batch means against the expectation bounds: generations for the
// comma variant, evaluations for the elitist variant, and (when stride-1
// trajectories are present on a comma batch) mean lambda_t at powers of two
// below the earliest completion. Rejects batches with failed runs.
std::vector<BoundCheck> compare_to_bounds(const BatchResult& batch,
                                          const ExperimentConfig& cfg,
                                          const TheoryContext& ctx);

}  // namespace saea
