#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "saea/algorithm.hpp"
#include "saea/fitness.hpp"
#include "saea/mutation.hpp"
#include "saea/rng.hpp"

namespace saea {

// One-offspring transition probabilities at a fitness level: frequencies of
// strict improvement / worsening with Wilson 95% intervals, plus conditional
// mean gain and loss. exact is set by the brute-force path (zero-width
// intervals, samples = number of enumerated outcomes).
struct LevelEstimate {
  int level = 0;
  std::int64_t samples = 0;
  double p_plus = 0.0;
  double p_plus_hw = 0.0;
  double p_plus_lo = 0.0;
  double p_plus_hi = 0.0;
  double p_minus = 0.0;
  double p_minus_hw = 0.0;
  double p_minus_lo = 0.0;
  double p_minus_hi = 0.0;
  double delta_gain = 0.0;  // 0 when no improvement was observed
  double delta_loss = 0.0;
  bool exact = false;
};

/// Monte Carlo estimate from `samples` offspring of x. samples >= 1000.
LevelEstimate estimate_level_probs(const FitnessFunction& f, const MutationSpec& spec,
                                   const Bitstring& x, std::int64_t samples,
                                   RngStream& rng);

// Exact probabilities by enumerating all 2^n offspring, weighted by
// rate^flips (1-rate)^(n-flips). Standard mutation only, n <= 12.
LevelEstimate exact_level_probs_bruteforce(const FitnessFunction& f,
                                           const MutationSpec& spec,
                                           const Bitstring& x);

enum class HardnessVerdict { kHard, kNotHard, kInconclusive };

std::string to_string(HardnessVerdict v);

struct HardnessReport {
  HardnessVerdict verdict = HardnessVerdict::kInconclusive;
  double threshold = 0.0;   // c * n^-epsilon
  double max_p_plus = 0.0;  // largest observed improvement frequency
  std::vector<LevelEstimate> levels;  // pooled per covered level, ascending
  // Non-optimal levels the hill-climb sampler never visited. The verdict
  // makes no claim about them.
  std::vector<int> uncovered_levels;
  std::vector<LevelEstimate> point_estimates;  // one row per sampled point
};

// Classifies hardness by sampling points per reachable fitness level from
// elitist hill-climb trajectories (random restarts), then comparing each
// point's Wilson interval for p+ against c * n^-epsilon:
//   hard        every upper bound <= threshold
//   not_hard    some lower bound  >  threshold
//   inconclusive otherwise
// Throws if no level at all can be populated.
HardnessReport probe_everywhere_hardness(const FitnessFunction& f,
                                         const MutationSpec& spec,
                                         int points_per_level, std::int64_t samples,
                                         double epsilon, double c, RngStream& rng);

/// Verdict as a pure function of shared estimates; monotone in the threshold.
HardnessVerdict verdict_from_estimates(const std::vector<LevelEstimate>& points,
                                       double threshold);

struct DriftEstimate {
  std::string conditioning;
  double mean_drift = 0.0;  // of log_F(lambda) per conditioned generation
  double half_width = 0.0;  // 95% normal-approximation half-width
  std::int64_t samples = 0;
  bool conclusive = false;
};

// Measures the one-generation change of log_F(lambda) over generations with
// lambda <= condition_max_lambda, pooled across restarted runs until
// target_samples such generations are seen. Inconclusive (not an error) if
// the effort cap of 100 * target_samples total generations is hit first.
DriftEstimate estimate_lambda_drift(const FitnessFunction& f,
                                    const AlgorithmParams& params,
                                    double condition_max_lambda,
                                    std::int64_t target_samples, std::uint64_t seed);

}  // namespace saea
