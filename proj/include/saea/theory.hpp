#pragma once

#include <cstdint>
#include <vector>

#include "saea/fitness.hpp"
#include "saea/mutation.hpp"

namespace saea {

// Inputs of the closed-form runtime bounds and thresholds. gamma bounds the
// one-offspring worsening probability (p_x^- <= 1/gamma); epsilon is the
// hardness exponent (p_max = O(n^-epsilon)); level_improvement[i] is a
// per-level lower bound s_i on the one-offspring improvement probability.
struct TheoryContext {
  int n = 0;
  int d = 0;
  double s = 1.0;
  double F = 1.5;
  double gamma = 2.0;
  double epsilon = 0.5;
  double p_min = 0.0;
  double p_max = 1.0;
  std::vector<double> level_improvement;
};

// lambda_safe := 4 * max(log_gamma(2d(s+1)), log_gamma(n ln n)).
// Above this offspring population size fitness losses become rare. The inner
// logarithm is natural; requires n >= 3 so that ln n > 1.
double lambda_safe(const TheoryContext& ctx);

/// n^(epsilon/2); below it the population size drifts upward.
double lambda_threshold(const TheoryContext& ctx);

// Potential of a state: fitness minus a penalty for population sizes below
// F^(1/s) / p_min. Coincides with the fitness once lambda is large.
double potential(int fitness, double lambda_real, const TheoryContext& ctx);

/// Sum over levels i = 0..d-1 of 1/s_i.
double fitness_level_sum(const TheoryContext& ctx);

// Expected-evaluation bound for the elitist variant to climb from fitness a
// to fitness b:
//   lambda0 * F/(F-1)
//   + (1/e + (1 - F^(-1/s)) / ln(F^(1/s))) * (F^((s+1)/s) - 1)/(F-1)
//     * sum_{i=a}^{b-1} 1/s_i.
double elitist_evaluation_bound(int a, int b, double lambda0,
                                const TheoryContext& ctx);

// Bound on E[lambda_t]:
//   floor(lambda0 / F^t) + (1/p_min) * (F^(1/s) + F^(1/s)/ln F).
double expected_lambda_bound(std::int64_t t, double lambda0,
                             const TheoryContext& ctx);

// Bound on the expected number of generations to the optimum:
//   2(s+1) * (d + s/(s+1) * log_F(F^(1/s) / p_min)).
double generation_bound(const TheoryContext& ctx);

// Defaults derived from the benchmark and the mutation operator. Throws for
// custom fitness functions (no closed-form level bounds).
TheoryContext make_context(const FitnessFunction& f, const MutationSpec& spec,
                           double s, double F);

double default_gamma(const FitnessFunction& f, const MutationSpec& spec);
double default_epsilon(const FitnessFunction& f, const MutationSpec& spec);
double default_p_max(const FitnessFunction& f, const MutationSpec& spec);

// Per-level improvement lower bounds s_i. Exact for leadingones under
// standard bit mutation; single-bit-flip bounds for onemax and onemaxblocks.
std::vector<double> level_improvement_bounds(const FitnessFunction& f,
                                             const MutationSpec& spec);

}  // namespace saea
