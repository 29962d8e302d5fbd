#include "saea/probe.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace saea {

namespace {

constexpr double kZ95 = 1.959963984540054;

struct Interval {
  double lo, hi, hw;
};

// Wilson score interval; behaves sensibly at frequencies near 0.
Interval wilson(std::int64_t count, std::int64_t trials) {
  const double nt = static_cast<double>(trials);
  const double p_hat = count / nt;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / nt;
  const double center = (p_hat + z2 / (2.0 * nt)) / denom;
  const double hw =
      kZ95 * std::sqrt(p_hat * (1.0 - p_hat) / nt + z2 / (4.0 * nt * nt)) / denom;
  return {std::max(0.0, center - hw), std::min(1.0, center + hw), hw};
}

struct TransitionCounts {
  std::int64_t samples = 0;
  std::int64_t improved = 0;
  std::int64_t worsened = 0;
  double gain_sum = 0.0;
  double loss_sum = 0.0;

  void add(const TransitionCounts& o) {
    samples += o.samples;
    improved += o.improved;
    worsened += o.worsened;
    gain_sum += o.gain_sum;
    loss_sum += o.loss_sum;
  }
};

TransitionCounts sample_transitions(const FitnessFunction& f, const Mutator& mutator,
                                    const Bitstring& x, std::int64_t samples,
                                    RngStream& rng) {
  TransitionCounts counts;
  counts.samples = samples;
  const int fx = f(x);
  Bitstring y(x.size());
  for (std::int64_t i = 0; i < samples; ++i) {
    mutator.mutate_into(y, x, rng);
    const int fy = f(y);
    if (fy > fx) {
      ++counts.improved;
      counts.gain_sum += fy - fx;
    } else if (fy < fx) {
      ++counts.worsened;
      counts.loss_sum += fx - fy;
    }
  }
  return counts;
}

LevelEstimate from_counts(int level, const TransitionCounts& c) {
  LevelEstimate e;
  e.level = level;
  e.samples = c.samples;
  e.p_plus = static_cast<double>(c.improved) / c.samples;
  e.p_minus = static_cast<double>(c.worsened) / c.samples;
  const Interval plus = wilson(c.improved, c.samples);
  const Interval minus = wilson(c.worsened, c.samples);
  e.p_plus_hw = plus.hw;
  e.p_plus_lo = plus.lo;
  e.p_plus_hi = plus.hi;
  e.p_minus_hw = minus.hw;
  e.p_minus_lo = minus.lo;
  e.p_minus_hi = minus.hi;
  e.delta_gain = c.improved > 0 ? c.gain_sum / c.improved : 0.0;
  e.delta_loss = c.worsened > 0 ? c.loss_sum / c.worsened : 0.0;
  return e;
}

}  // namespace

LevelEstimate estimate_level_probs(const FitnessFunction& f, const MutationSpec& spec,
                                   const Bitstring& x, std::int64_t samples,
                                   RngStream& rng) {
  if (samples < 1000) throw std::invalid_argument("estimate_level_probs: samples >= 1000");
  const Mutator mutator(spec, f.n());
  return from_counts(f(x), sample_transitions(f, mutator, x, samples, rng));
}

LevelEstimate exact_level_probs_bruteforce(const FitnessFunction& f,
                                           const MutationSpec& spec,
                                           const Bitstring& x) {
  const int n = f.n();
  if (n > 12) throw std::invalid_argument("exact_level_probs_bruteforce: n <= 12");
  if (spec.kind != MutationKind::kStandard) {
    throw std::invalid_argument("exact_level_probs_bruteforce: standard mutation only");
  }
  const double rate = spec.rate_for(n);

  std::vector<double> pow_r(n + 1, 1.0), pow_q(n + 1, 1.0);
  for (int i = 1; i <= n; ++i) {
    pow_r[i] = pow_r[i - 1] * rate;
    pow_q[i] = pow_q[i - 1] * (1.0 - rate);
  }

  const int fx = f(x);
  double p_plus = 0.0, p_minus = 0.0, gain = 0.0, loss = 0.0;
  Bitstring y = x;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    y = x;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1u) y.flip(i);
    }
    const int flips = std::popcount(mask);
    const double prob = pow_r[flips] * pow_q[n - flips];
    const int fy = f(y);
    if (fy > fx) {
      p_plus += prob;
      gain += prob * (fy - fx);
    } else if (fy < fx) {
      p_minus += prob;
      loss += prob * (fx - fy);
    }
  }

  LevelEstimate e;
  e.level = fx;
  e.samples = static_cast<std::int64_t>(1) << n;
  e.p_plus = p_plus;
  e.p_plus_lo = e.p_plus_hi = p_plus;
  e.p_minus = p_minus;
  e.p_minus_lo = e.p_minus_hi = p_minus;
  e.delta_gain = p_plus > 0.0 ? gain / p_plus : 0.0;
  e.delta_loss = p_minus > 0.0 ? loss / p_minus : 0.0;
  e.exact = true;
  return e;
}

std::string to_string(HardnessVerdict v) {
  switch (v) {
    case HardnessVerdict::kHard:
      return "hard";
    case HardnessVerdict::kNotHard:
      return "not_hard";
    case HardnessVerdict::kInconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

HardnessVerdict verdict_from_estimates(const std::vector<LevelEstimate>& points,
                                       double threshold) {
  bool all_below = true;
  for (const auto& e : points) {
    if (e.p_plus_lo > threshold) return HardnessVerdict::kNotHard;
    if (e.p_plus_hi > threshold) all_below = false;
  }
  return all_below ? HardnessVerdict::kHard : HardnessVerdict::kInconclusive;
}

HardnessReport probe_everywhere_hardness(const FitnessFunction& f,
                                         const MutationSpec& spec,
                                         int points_per_level, std::int64_t samples,
                                         double epsilon, double c, RngStream& rng) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("probe: epsilon must be in (0, 1)");
  }
  if (!(c > 0.0)) throw std::invalid_argument("probe: c must be positive");
  if (points_per_level < 1) throw std::invalid_argument("probe: points-per-level >= 1");
  if (samples < 1000) throw std::invalid_argument("probe: samples >= 1000");

  const int n = f.n();
  const Mutator mutator(spec, n);

  // Point source: elitist hill climbs from uniform restarts, one entry point
  // per level visited per restart. Unvisited levels stay uncovered.
  std::map<int, std::vector<Bitstring>> points;
  const std::int64_t stall_limit = std::max<std::int64_t>(10000, 50LL * n);
  Bitstring y(n);
  for (int restart = 0; restart < points_per_level; ++restart) {
    Bitstring x = Bitstring::random(n, rng);
    int fx = f(x);
    points[fx].push_back(x);
    std::int64_t stalled = 0;
    while (!f.is_optimal(fx) && stalled < stall_limit) {
      mutator.mutate_into(y, x, rng);
      const int fy = f(y);
      if (fy > fx) {
        x = y;
        fx = fy;
        points[fx].push_back(x);
        stalled = 0;
      } else {
        ++stalled;
      }
    }
  }
  points.erase(f.d());  // optimal points have no improvement to measure

  if (points.empty()) {
    throw std::runtime_error("probe: no non-optimal search point could be sampled");
  }

  HardnessReport report;
  report.threshold = c * std::pow(static_cast<double>(n), -epsilon);

  for (const auto& [level, xs] : points) {
    TransitionCounts pooled;
    for (const auto& x : xs) {
      const TransitionCounts counts = sample_transitions(f, mutator, x, samples, rng);
      pooled.add(counts);
      LevelEstimate e = from_counts(level, counts);
      report.max_p_plus = std::max(report.max_p_plus, e.p_plus);
      report.point_estimates.push_back(std::move(e));
    }
    report.levels.push_back(from_counts(level, pooled));
  }

  for (int level = 0; level < f.d(); ++level) {
    if (!points.contains(level)) report.uncovered_levels.push_back(level);
  }

  report.verdict = verdict_from_estimates(report.point_estimates, report.threshold);
  return report;
}

DriftEstimate estimate_lambda_drift(const FitnessFunction& f,
                                    const AlgorithmParams& params,
                                    double condition_max_lambda,
                                    std::int64_t target_samples, std::uint64_t seed) {
  if (!(condition_max_lambda >= 1.0)) {
    throw std::invalid_argument("drift: condition-max-lambda >= 1 required");
  }
  if (target_samples < 1) throw std::invalid_argument("drift: target-samples >= 1");
  params.validate(f.n());

  const double log_f = std::log(params.update_strength);
  // Hysteresis: re-entering the conditioned region from above takes four net
  // consecutive successes, so restarting here loses almost nothing, and the
  // cost of one tracked generation stays below condition * F^4 offspring.
  const double leave_lambda =
      condition_max_lambda * std::pow(params.update_strength, 4.0);
  const std::int64_t effort_cap = 100 * target_samples;

  const Mutator mutator(params.mutation, f.n());
  std::int64_t effort = 0;  // generations plus one unit per restart
  std::int64_t m = 0;
  double mean = 0.0, m2 = 0.0;  // Welford

  std::uint64_t restart = 0;
  while (m < target_samples && effort < effort_cap) {
    const std::uint64_t run_seed = trial_seed(seed, restart++);
    RngStream init_rng(stream_seed(run_seed, 0));
    StepRngs rngs = run_streams(run_seed);
    RunState state = initial_state(f, params, init_rng);
    ++effort;
    while (state.fitness < f.d() && state.lambda_real <= leave_lambda &&
           m < target_samples && effort < effort_cap) {
      const double lambda_before = state.lambda_real;
      generation_step(state, params, f, mutator, rngs);
      ++effort;
      if (lambda_before <= condition_max_lambda) {
        const double delta =
            (std::log(state.lambda_real) - std::log(lambda_before)) / log_f;
        ++m;
        const double d1 = delta - mean;
        mean += d1 / m;
        m2 += d1 * (delta - mean);
      }
    }
  }

  DriftEstimate est;
  std::ostringstream cond;
  cond << "lambda<=" << condition_max_lambda << "; restart at optimum or lambda>"
       << leave_lambda;
  est.conditioning = cond.str();
  est.samples = m;
  est.mean_drift = mean;
  est.half_width =
      m > 1 ? kZ95 * std::sqrt(m2 / (m - 1) / static_cast<double>(m)) : 0.0;
  est.conclusive = m >= target_samples;
  return est;
}

}  // namespace saea
