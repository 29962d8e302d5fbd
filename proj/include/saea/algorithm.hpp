#pragma once

#include <cstdint>
#include <vector>

#include "saea/fitness.hpp"
#include "saea/mutation.hpp"
#include "saea/rng.hpp"

namespace saea {

struct AlgorithmParams {
  double update_strength = 1.5;  // F, > 1
  double success_rate = 1.0;     // s, > 0
  MutationSpec mutation;
  bool elitist = false;  // false: comma selection, true: plus selection
  double lambda_init = 1.0;

  void validate(int n) const;
};

// Markov state of one run: current search point, continuous offspring
// population size, counters and the cached parent fitness.
struct RunState {
  Bitstring x;
  double lambda_real = 1.0;
  std::int64_t generation = 0;
  std::int64_t evaluations = 0;
  int fitness = 0;
};

struct GenerationOutcome {
  bool success = false;  // strict parent-fitness improvement
  std::int64_t offspring_evaluated = 0;
  int best_offspring_fitness = 0;
  int fitness_delta = 0;  // new parent fitness minus old; may be negative
};

struct TrajectoryPoint {
  std::int64_t generation = 0;
  int fitness = 0;
  double lambda_real = 1.0;
};

struct RunRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  bool success = false;
  std::int64_t generations = 0;
  std::int64_t evaluations = 0;
  int final_fitness = 0;
  double max_lambda = 0.0;
  double time_ms = 0.0;
  std::vector<TrajectoryPoint> trajectory;
};

/// Nearest integer with the .5 tie rounded up; result >= 1 for input >= 1.
inline std::int64_t round_lambda(double lambda_real) {
  const auto r = static_cast<std::int64_t>(lambda_real + 0.5);
  return r < 1 ? 1 : r;
}

// Mutation and selection tie-breaking draws come from separate streams (tags
// 1 and 2 of the run seed; tag 0 seeds initialization).
struct StepRngs {
  RngStream mutation;
  RngStream selection;
};

StepRngs run_streams(std::uint64_t seed);

/// Uniform random search point, lambda at lambda_init, counters zero.
RunState initial_state(const FitnessFunction& f, const AlgorithmParams& params,
                       RngStream& rng);

// One generation: round(lambda) offspring, uniform choice among the fittest,
// comma or plus replacement, multiplicative lambda update (divide by F on
// success, multiply by F^(1/s) otherwise, clamped at 1).
GenerationOutcome generation_step(RunState& state, const AlgorithmParams& params,
                                  const FitnessFunction& f, const Mutator& mutator,
                                  StepRngs& rngs);

// Full run until the optimum or budget exhaustion (a normal outcome, not an
// error). The final generation always runs to completion, so evaluations may
// overshoot the budget by at most one offspring batch. trajectory_stride 0
// disables trajectory sampling.
RunRecord run_to_optimum(const FitnessFunction& f, const AlgorithmParams& params,
                         std::int64_t budget_evals, std::uint64_t seed,
                         std::int64_t trajectory_stride = 0, int trial_index = 0);

}  // namespace saea
