// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Every threshold is pinned here, in code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "saea/harness.hpp"
#include "saea/probe.hpp"
#include "saea/theory.hpp"
#include "support/oracles.hpp"

using namespace saea;
namespace oracle = saea::testing;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d %-28s %s\n", pass ? "PASS" : "FAIL", index,
              name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

ExperimentConfig base_config(const std::string& function, int n, double s,
                             std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.function = function;
  cfg.n = n;
  cfg.params.success_rate = s;
  cfg.base_seed = seed;
  return cfg;
}

// ---------------------------------------------------------------------------
// 1. LeadingOnes scaling: success everywhere, evals slope ~2, gen/n stable.
void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  std::ostringstream detail;
  for (const double s : {1.0, 4.0}) {
    ExperimentConfig tmpl = base_config("leadingones", 0, s, 100 + static_cast<int>(s));
    tmpl.trials = 50;
    tmpl.budget_evals = 100'000'000;
    const ScalingTable table = scaling_study(tmpl, {64, 128, 256});

    double ratio_sum = 0.0;
    for (const auto& row : table.rows) {
      pass = pass && row.success_rate == 1.0;
      ratio_sum += row.gen_per_n;
    }
    const double ratio_mean = ratio_sum / table.rows.size();
    for (const auto& row : table.rows) {
      pass = pass && row.gen_per_n >= 0.7 * ratio_mean &&
             row.gen_per_n <= 1.3 * ratio_mean;
    }
    const double slope = table.loglog_slope_evaluations;
    pass = pass && slope >= 1.7 && slope <= 2.3;
    detail << "slope[s=" << s << "]=" << fmt(slope) << " gen/n="
           << fmt(table.rows[0].gen_per_n) << "/" << fmt(table.rows[1].gen_per_n)
           << "/" << fmt(table.rows[2].gen_per_n) << " ";
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  pass = pass && elapsed < 600.0;
  detail << "elapsed=" << fmt(elapsed) << "s";
  report(1, "leadingones-scaling", pass, detail.str());
}

// ---------------------------------------------------------------------------
// 2. Success-rate robustness on the hard function, collapse on the easy one.
void criterion_2() {
  bool pass = true;
  std::ostringstream detail;

  std::vector<double> medians;
  for (const double s : {0.5, 1.0, 4.0, 8.0}) {
    ExperimentConfig cfg = base_config("leadingones", 128, s, 200);
    cfg.trials = 20;
    cfg.budget_evals = 100'000'000;
    const BatchResult batch = run_batch(cfg);
    pass = pass && batch.summary.success_rate == 1.0;
    medians.push_back(batch.summary.evaluations.median);
  }
  const auto [lo_it, hi_it] = std::minmax_element(medians.begin(), medians.end());
  pass = pass && *hi_it <= 4.0 * *lo_it;
  detail << "LO median spread=" << fmt(*hi_it / *lo_it);

  ExperimentConfig hard = base_config("onemax", 100, 18.0, 201);
  hard.trials = 20;
  hard.budget_evals = 1'000'000;
  const double rate_s18 = run_batch(hard).summary.success_rate;
  pass = pass && rate_s18 <= 0.1;

  ExperimentConfig easy = base_config("onemax", 100, 0.5, 202);
  easy.trials = 20;
  easy.budget_evals = 1'000'000;
  const double rate_s05 = run_batch(easy).summary.success_rate;
  pass = pass && rate_s05 == 1.0;
  detail << " onemax success s18=" << fmt(rate_s18) << " s0.5=" << fmt(rate_s05);

  report(2, "success-rate-robustness", pass, detail.str());
}

// ---------------------------------------------------------------------------
// 3. OneMaxBlocks difficulty dial: evals drop with k like n^2 log k / k.
void criterion_3() {
  ExperimentConfig tmpl = base_config("onemaxblocks", 256, 1.0, 300);
  tmpl.trials = 50;
  tmpl.budget_evals = 100'000'000;
  const ScalingTable table = scaling_study(tmpl, {256}, {1, 4, 16});

  std::map<int, ScalingRow> rows;
  for (const auto& row : table.rows) rows[row.k] = row;

  bool pass = rows[1].median_evaluations > rows[4].median_evaluations &&
              rows[4].median_evaluations > rows[16].median_evaluations;
  for (const auto& [k, row] : rows) {
    pass = pass && row.success_rate == 1.0 && row.gen_per_n <= 10.0;
  }

  // Theory shape: evals(k) ~ n^2 ln(k)/k. Fit the constant at k=4, then the
  // k=16 ratio must land within a factor 3 of the prediction.
  const double ratio4 = rows[4].median_evaluations / rows[1].median_evaluations;
  const double ratio16 = rows[16].median_evaluations / rows[1].median_evaluations;
  const double c_fit = ratio4 * 4.0 / std::log(4.0);
  const double predicted16 = c_fit * std::log(16.0) / 16.0;
  pass = pass && ratio16 >= predicted16 / 3.0 && ratio16 <= predicted16 * 3.0;

  std::ostringstream detail;
  detail << "medians=" << fmt(rows[1].median_evaluations) << "/"
         << fmt(rows[4].median_evaluations) << "/" << fmt(rows[16].median_evaluations)
         << " ratio16=" << fmt(ratio16) << " predicted=" << fmt(predicted16);
  report(3, "onemaxblocks-dial", pass, detail.str());
}

// ---------------------------------------------------------------------------
// 4. Tiny mutation rates make the easy function safe for huge s.
void criterion_4() {
  ExperimentConfig cfg = base_config("onemax", 64, 18.0, 400);
  cfg.params.mutation.explicit_rate = std::pow(64.0, -1.5);
  cfg.trials = 20;
  cfg.budget_evals = 100'000'000;
  const BatchResult batch = run_batch(cfg);
  const bool pass = batch.summary.success_rate == 1.0;
  report(4, "small-rate-hardening", pass,
         "success=" + fmt(batch.summary.success_rate) +
             " median_evals=" + fmt(batch.summary.evaluations.median));
}

// ---------------------------------------------------------------------------
// 5. Upward drift of log_F lambda below n^0.45.
void criterion_5() {
  bool pass = true;
  std::ostringstream detail;
  const auto f = FitnessFunction::leadingones(128);
  const double condition = std::pow(128.0, 0.45);
  for (const double s : {1.0, 4.0}) {
    AlgorithmParams params;
    params.success_rate = s;
    const DriftEstimate est =
        estimate_lambda_drift(f, params, condition, 10000, 500 + static_cast<int>(s));
    const bool ok = est.conclusive && est.samples >= 10000 &&
                    est.mean_drift >= 1.0 / (4.0 * s) &&
                    est.mean_drift - est.half_width > 0.0;
    pass = pass && ok;
    detail << "s=" << s << ": drift=" << fmt(est.mean_drift) << "+-"
           << fmt(est.half_width) << " (need >= " << fmt(1.0 / (4.0 * s)) << ") ";
  }
  report(5, "lambda-drift", pass, detail.str());
}

// ---------------------------------------------------------------------------
// 6. Quasi-elitism: fitness losses above lambda_safe are rare.
void criterion_6() {
  const ExperimentConfig proto = base_config("leadingones", 128, 1.0, 600);
  const TheoryContext ctx = make_context(proto.make_function(), proto.params.mutation,
                                         proto.params.success_rate,
                                         proto.params.update_strength);
  const double safe = lambda_safe(ctx);

  std::int64_t observed = 0, losses = 0;
  const auto f = proto.make_function();
  for (std::uint64_t trial = 0; observed < 100000 && trial < 3000; ++trial) {
    const RunRecord rec = run_to_optimum(f, proto.params, proto.budget_evals,
                                         trial_seed(proto.base_seed, trial), 1);
    for (std::size_t t = 0; t + 1 < rec.trajectory.size(); ++t) {
      if (rec.trajectory[t].lambda_real >= safe) {
        ++observed;
        losses += rec.trajectory[t + 1].fitness < rec.trajectory[t].fitness ? 1 : 0;
      }
    }
  }
  const double fraction = observed > 0 ? static_cast<double>(losses) / observed : 1.0;
  const bool pass = observed >= 100000 && fraction <= 0.01;
  report(6, "quasi-elitism", pass,
         "lambda_safe=" + fmt(safe) + " observed=" + std::to_string(observed) +
             " loss_fraction=" + fmt(fraction));
}

// ---------------------------------------------------------------------------
// 7. Bound domination: generations, elitist evaluations, expected lambda.
void criterion_7() {
  bool pass = true;
  int violations = 0;
  std::ostringstream detail;
  for (const int n : {32, 64}) {
    ExperimentConfig cfg = base_config("leadingones", n, 1.0, 700 + n);
    cfg.trials = 100;
    cfg.trajectory_stride = 1;
    const BatchResult batch = run_batch(cfg);
    pass = pass && batch.summary.success_rate == 1.0;
    const TheoryContext ctx = make_context(cfg.make_function(), cfg.params.mutation,
                                           cfg.params.success_rate,
                                           cfg.params.update_strength);
    for (const auto& check : compare_to_bounds(batch, cfg, ctx)) {
      violations += check.violated ? 1 : 0;
      if (check.metric == "mean_generations_vs_generation_bound") {
        detail << "n=" << n << " gen_ratio=" << fmt(check.ratio) << " ";
      }
    }

    ExperimentConfig elitist = cfg;
    elitist.params.elitist = true;
    elitist.trajectory_stride = 0;
    elitist.base_seed = 800 + n;
    const BatchResult ebatch = run_batch(elitist);
    pass = pass && ebatch.summary.success_rate == 1.0;
    for (const auto& check : compare_to_bounds(ebatch, elitist, ctx)) {
      violations += check.violated ? 1 : 0;
      detail << "n=" << n << " elitist_ratio=" << fmt(check.ratio) << " ";
    }
  }
  pass = pass && violations == 0;
  detail << "violations=" << violations;
  report(7, "bound-domination", pass, detail.str());
}

// ---------------------------------------------------------------------------
// 8. Oracle equivalence: literal formulas and brute-force probabilities.
void criterion_8() {
  bool exact_ok = true;
  for (int n = 1; n <= 12 && exact_ok; ++n) {
    for (std::uint64_t v = 0; v < (1ULL << n); ++v) {
      const Bitstring x = Bitstring::from_uint(v, n);
      if (onemax(x) != oracle::onemax_literal(x) ||
          leadingones(x) != oracle::leadingones_literal(x)) {
        exact_ok = false;
        break;
      }
    }
  }
  for (const int k : {1, 2, 3, 4, 6, 12}) {
    for (std::uint64_t v = 0; v < (1ULL << 12) && exact_ok; ++v) {
      const Bitstring x = Bitstring::from_uint(v, 12);
      if (onemaxblocks(x, k) != oracle::onemaxblocks_literal(x, k)) exact_ok = false;
    }
  }

  RngStream rng(808);
  const MutationSpec spec;
  int mismatches = 0;
  const int n = 10;
  for (const auto& f : {FitnessFunction::onemax(n), FitnessFunction::leadingones(n),
                        FitnessFunction::onemaxblocks(n, 5)}) {
    for (int p = 0; p < 20; ++p) {
      const Bitstring x = Bitstring::random(n, rng);
      const LevelEstimate exact = exact_level_probs_bruteforce(f, spec, x);
      const LevelEstimate mc = estimate_level_probs(f, spec, x, 20000, rng);
      if (std::abs(mc.p_plus - exact.p_plus) > 3.0 * mc.p_plus_hw) ++mismatches;
      if (std::abs(mc.p_minus - exact.p_minus) > 3.0 * mc.p_minus_hw) ++mismatches;
    }
  }
  const bool pass = exact_ok && mismatches == 0;
  report(8, "oracle-equivalence", pass,
         std::string("exhaustive=") + (exact_ok ? "exact" : "MISMATCH") +
             " mc_mismatches=" + std::to_string(mismatches) + "/120");
}

// ---------------------------------------------------------------------------
// 9. Hardness classifier verdicts.
void criterion_9() {
  const MutationSpec sbm;
  MutationSpec tiny;
  tiny.explicit_rate = std::pow(256.0, -1.5);

  RngStream rng_a(901), rng_b(902), rng_c(903);
  const HardnessReport lo = probe_everywhere_hardness(
      FitnessFunction::leadingones(256), sbm, 2, 3000, 0.9, 2.0, rng_a);
  const HardnessReport om = probe_everywhere_hardness(
      FitnessFunction::onemax(256), sbm, 2, 3000, 0.5, 2.0, rng_b);
  const HardnessReport om_tiny = probe_everywhere_hardness(
      FitnessFunction::onemax(256), tiny, 2, 3000, 0.5, 2.0, rng_c);

  const bool pass = lo.verdict == HardnessVerdict::kHard &&
                    om.verdict == HardnessVerdict::kNotHard &&
                    om_tiny.verdict == HardnessVerdict::kHard;
  report(9, "hardness-classifier", pass,
         "leadingones=" + to_string(lo.verdict) + " onemax=" + to_string(om.verdict) +
             " onemax@n^-1.5=" + to_string(om_tiny.verdict));
}

// ---------------------------------------------------------------------------
// 10. Byte-identical records across executions (time_ms excluded).
std::string strip_time_column(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) out << line.substr(0, line.rfind(',')) << '\n';
  return out.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void criterion_10() {
  const auto tmp = std::filesystem::temp_directory_path();
  const auto dir_a = tmp / "saea_acceptance_a";
  const auto dir_b = tmp / "saea_acceptance_b";
  std::filesystem::remove_all(dir_a);
  std::filesystem::remove_all(dir_b);

  ExperimentConfig cfg = base_config("leadingones", 64, 1.0, 1000);
  cfg.trials = 10;
  cfg.workers = 4;
  cfg.out_dir = dir_a.string();
  run_batch(cfg);
  cfg.out_dir = dir_b.string();
  run_batch(cfg);

  const bool records_equal = strip_time_column(slurp(dir_a / "records.csv")) ==
                             strip_time_column(slurp(dir_b / "records.csv"));
  const bool summary_equal = slurp(dir_a / "summary.csv") == slurp(dir_b / "summary.csv");
  std::filesystem::remove_all(dir_a);
  std::filesystem::remove_all(dir_b);

  const bool pass = records_equal && summary_equal;
  report(10, "determinism", pass,
         std::string("records=") + (records_equal ? "identical" : "DIFFER") +
             " summary=" + (summary_equal ? "identical" : "DIFFER"));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("%d/10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
