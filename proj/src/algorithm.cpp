#include "saea/algorithm.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace saea {

void AlgorithmParams::validate(int n) const {
  if (!(update_strength > 1.0)) throw std::invalid_argument("F must exceed 1");
  if (!(success_rate > 0.0)) throw std::invalid_argument("s must be positive");
  if (!(lambda_init >= 1.0)) throw std::invalid_argument("lambda-init must be >= 1");
  mutation.validate(n);
}

StepRngs run_streams(std::uint64_t seed) {
  return StepRngs{RngStream(stream_seed(seed, 1)), RngStream(stream_seed(seed, 2))};
}

RunState initial_state(const FitnessFunction& f, const AlgorithmParams& params,
                       RngStream& rng) {
  RunState state{Bitstring::random(f.n(), rng), params.lambda_init, 0, 0, 0};
  state.fitness = f(state.x);
  return state;
}

GenerationOutcome generation_step(RunState& state, const AlgorithmParams& params,
                                  const FitnessFunction& f, const Mutator& mutator,
                                  StepRngs& rngs) {
  const std::int64_t offspring = round_lambda(state.lambda_real);
  const int parent_fitness = state.fitness;

  const bool shared = mutator.spec().kind == MutationKind::kHeavyTailed &&
                      mutator.spec().shared_strength;
  const double shared_rate = shared ? mutator.draw_rate(rngs.mutation) : 0.0;

  Bitstring best(state.x.size());
  Bitstring scratch(state.x.size());
  int best_fitness = -1;
  std::uint64_t ties = 0;
  for (std::int64_t i = 0; i < offspring; ++i) {
    if (shared) {
      standard_bit_mutation_into(scratch, state.x, shared_rate, rngs.mutation);
    } else {
      mutator.mutate_into(scratch, state.x, rngs.mutation);
    }
    const int fy = f(scratch);
    if (fy > best_fitness) {
      best_fitness = fy;
      ties = 1;
      best.swap(scratch);
    } else if (fy == best_fitness) {
      // Reservoir step: keeps the choice uniform over the current argmax set.
      ++ties;
      if (rngs.selection.next_below(ties) == 0) best.swap(scratch);
    }
  }

  const bool success = best_fitness > parent_fitness;
  if (!params.elitist || success) {
    state.x.swap(best);
    state.fitness = best_fitness;
  }
  state.lambda_real =
      success ? std::max(1.0, state.lambda_real / params.update_strength)
              : state.lambda_real *
                    std::pow(params.update_strength, 1.0 / params.success_rate);
  state.evaluations += offspring;
  state.generation += 1;

  return GenerationOutcome{success, offspring, best_fitness,
                           state.fitness - parent_fitness};
}

RunRecord run_to_optimum(const FitnessFunction& f, const AlgorithmParams& params,
                         std::int64_t budget_evals, std::uint64_t seed,
                         std::int64_t trajectory_stride, int trial_index) {
  if (budget_evals < 1) throw std::invalid_argument("budget-evals must be >= 1");
  params.validate(f.n());

  const auto start = std::chrono::steady_clock::now();
  RngStream init_rng(stream_seed(seed, 0));
  StepRngs rngs = run_streams(seed);
  const Mutator mutator(params.mutation, f.n());

  RunState state = initial_state(f, params, init_rng);

  RunRecord rec;
  rec.trial = trial_index;
  rec.seed = seed;
  rec.max_lambda = state.lambda_real;

  const auto sample = [&] {
    if (trajectory_stride > 0 && state.generation % trajectory_stride == 0) {
      rec.trajectory.push_back({state.generation, state.fitness, state.lambda_real});
    }
  };
  sample();

  bool warned = false;
  while (state.fitness < f.d() && state.evaluations < budget_evals) {
    if (!warned && round_lambda(state.lambda_real) > budget_evals - state.evaluations) {
      std::fprintf(stderr,
                   "saea: warning: offspring batch of %lld exceeds remaining "
                   "budget %lld (seed %llu)\n",
                   static_cast<long long>(round_lambda(state.lambda_real)),
                   static_cast<long long>(budget_evals - state.evaluations),
                   static_cast<unsigned long long>(seed));
      warned = true;
    }
    generation_step(state, params, f, mutator, rngs);
    if (state.lambda_real > rec.max_lambda) rec.max_lambda = state.lambda_real;
    sample();
  }

  rec.success = state.fitness == f.d();
  rec.generations = state.generation;
  rec.evaluations = state.evaluations;
  rec.final_fitness = state.fitness;
  rec.time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                start)
          .count();
  return rec;
}

}  // namespace saea
