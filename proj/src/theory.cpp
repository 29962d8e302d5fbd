#include "saea/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace saea {

namespace {

double log_base(double base, double x) { return std::log(x) / std::log(base); }

void check_params(const TheoryContext& ctx) {
  if (!(ctx.F > 1.0)) throw std::invalid_argument("theory: F must exceed 1");
  if (!(ctx.s > 0.0)) throw std::invalid_argument("theory: s must be positive");
}

}  // namespace

double lambda_safe(const TheoryContext& ctx) {
  check_params(ctx);
  if (ctx.n < 3) throw std::invalid_argument("lambda_safe: n >= 3 required");
  if (!(ctx.gamma > 1.0)) throw std::invalid_argument("lambda_safe: gamma must exceed 1");
  const double a = log_base(ctx.gamma, 2.0 * ctx.d * (ctx.s + 1.0));
  const double b = log_base(ctx.gamma, ctx.n * std::log(ctx.n));
  return 4.0 * std::max(a, b);
}

double lambda_threshold(const TheoryContext& ctx) {
  return std::pow(static_cast<double>(ctx.n), ctx.epsilon / 2.0);
}

double potential(int fitness, double lambda_real, const TheoryContext& ctx) {
  check_params(ctx);
  if (!(lambda_real >= 1.0)) throw std::invalid_argument("potential: lambda >= 1 required");
  if (!(ctx.p_min > 0.0)) throw std::invalid_argument("potential: p_min must be positive");
  const double arg =
      std::max(std::pow(ctx.F, 1.0 / ctx.s) / (ctx.p_min * lambda_real), 1.0);
  return fitness - ctx.s / (ctx.s + 1.0) * log_base(ctx.F, arg);
}

double fitness_level_sum(const TheoryContext& ctx) {
  if (ctx.level_improvement.empty()) {
    throw std::invalid_argument("fitness_level_sum: no level bounds");
  }
  double sum = 0.0;
  for (const double si : ctx.level_improvement) {
    if (!(si > 0.0)) throw std::invalid_argument("fitness_level_sum: s_i must be positive");
    sum += 1.0 / si;
  }
  return sum;
}

double elitist_evaluation_bound(int a, int b, double lambda0,
                                const TheoryContext& ctx) {
  check_params(ctx);
  if (a < 0 || a > b || b > static_cast<int>(ctx.level_improvement.size())) {
    throw std::invalid_argument("elitist_evaluation_bound: need 0 <= a <= b <= d");
  }
  const double F = ctx.F;
  const double s = ctx.s;
  // The lambda0 coefficient is F/(F-1): with F > 1 the variant F/(1-F) is
  // negative and cannot upper-bound a nonnegative evaluation count.
  double bound = lambda0 * F / (F - 1.0);
  double level_sum = 0.0;
  for (int i = a; i < b; ++i) {
    const double si = ctx.level_improvement[i];
    if (!(si > 0.0)) throw std::invalid_argument("elitist_evaluation_bound: s_i must be positive");
    level_sum += 1.0 / si;
  }
  const double coeff = (1.0 / std::exp(1.0) +
                        (1.0 - std::pow(F, -1.0 / s)) / std::log(std::pow(F, 1.0 / s))) *
                       (std::pow(F, (s + 1.0) / s) - 1.0) / (F - 1.0);
  return bound + coeff * level_sum;
}

double expected_lambda_bound(std::int64_t t, double lambda0,
                             const TheoryContext& ctx) {
  check_params(ctx);
  if (t < 0) throw std::invalid_argument("expected_lambda_bound: t >= 0 required");
  if (!(ctx.p_min > 0.0)) throw std::invalid_argument("expected_lambda_bound: p_min must be positive");
  const double fpow = std::pow(ctx.F, 1.0 / ctx.s);
  const double decayed = std::floor(lambda0 / std::pow(ctx.F, static_cast<double>(t)));
  return decayed + (fpow + fpow / std::log(ctx.F)) / ctx.p_min;
}

double generation_bound(const TheoryContext& ctx) {
  check_params(ctx);
  if (!(ctx.p_min > 0.0)) throw std::invalid_argument("generation_bound: p_min must be positive");
  const double s = ctx.s;
  const double log_term =
      log_base(ctx.F, std::pow(ctx.F, 1.0 / s) / ctx.p_min);
  return 2.0 * (s + 1.0) * (ctx.d + s / (s + 1.0) * log_term);
}

namespace {

// Effective single-bit rate and the strength-1 weight of the operator.
struct OperatorProfile {
  double rate;   // per-bit rate of the (base) standard mutation
  double p_one;  // probability the heavy-tailed draw picks strength 1; 1 for standard
};

OperatorProfile profile_for(const FitnessFunction& f, const MutationSpec& spec) {
  if (spec.kind == MutationKind::kStandard) {
    return {spec.rate_for(f.n()), 1.0};
  }
  const PowerLawSampler sampler(f.n(), spec.beta);
  return {1.0 / f.n(), sampler.pmf(1)};
}

}  // namespace

std::vector<double> level_improvement_bounds(const FitnessFunction& f,
                                             const MutationSpec& spec) {
  const auto prof = profile_for(f, spec);
  const int n = f.n();
  const double r = prof.rate;
  const double keep_rest = std::pow(1.0 - r, n - 1);
  std::vector<double> s_i(static_cast<std::size_t>(f.d()));
  switch (f.kind()) {
    case FitnessFunction::Kind::kOneMax:
      for (int i = 0; i < f.d(); ++i) {
        s_i[i] = prof.p_one * (n - i) * r * keep_rest;
      }
      break;
    case FitnessFunction::Kind::kLeadingOnes:
      // Exact under standard bit mutation: improvement iff the first zero
      // flips and the prefix survives.
      for (int i = 0; i < f.d(); ++i) {
        s_i[i] = prof.p_one * r * std::pow(1.0 - r, i);
      }
      break;
    case FitnessFunction::Kind::kOneMaxBlocks:
      for (int i = 0; i < f.d(); ++i) {
        s_i[i] = prof.p_one * (f.k() - (i % f.k())) * r * keep_rest;
      }
      break;
    case FitnessFunction::Kind::kCustom:
      throw std::invalid_argument("no closed-form level bounds for custom fitness");
  }
  return s_i;
}

double default_gamma(const FitnessFunction& f, const MutationSpec& spec) {
  const int n = f.n();
  double copy_prob;
  if (spec.kind == MutationKind::kStandard) {
    copy_prob = std::pow(1.0 - spec.rate_for(n), n);
  } else {
    const PowerLawSampler sampler(n, spec.beta);
    copy_prob = sampler.pmf(1) * std::pow(1.0 - 1.0 / n, n);
  }
  return 1.0 / (1.0 - copy_prob);
}

double default_p_max(const FitnessFunction& f, const MutationSpec& spec) {
  const int n = f.n();
  double first_bit_flip;  // P(a designated bit flips)
  double any_flip;        // P(the offspring differs from the parent)
  if (spec.kind == MutationKind::kStandard) {
    const double r = spec.rate_for(n);
    first_bit_flip = r;
    any_flip = 1.0 - std::pow(1.0 - r, n);
  } else {
    const PowerLawSampler sampler(n, spec.beta);
    first_bit_flip = 0.0;
    any_flip = 1.0;
    double copy = 0.0;
    for (int c = 1; c <= sampler.support_max(); ++c) {
      first_bit_flip += sampler.pmf(c) * c / n;
      copy += sampler.pmf(c) * std::pow(1.0 - static_cast<double>(c) / n, n);
    }
    any_flip = 1.0 - copy;
  }
  switch (f.kind()) {
    case FitnessFunction::Kind::kLeadingOnes:
      return first_bit_flip;
    case FitnessFunction::Kind::kOneMaxBlocks:
      return std::min(1.0, f.k() * first_bit_flip);
    default:
      return any_flip;
  }
}

double default_epsilon(const FitnessFunction& f, const MutationSpec& spec) {
  if (f.n() < 3) return 0.5;
  const double log_n = std::log(static_cast<double>(f.n()));
  double eps;
  if (spec.kind == MutationKind::kHeavyTailed &&
      f.kind() != FitnessFunction::Kind::kOneMax) {
    // Asymptotic exponent of p_max under heavy tails: n^-(beta-1), with block
    // functions paying an extra factor k.
    eps = spec.beta - 1.0;
    if (f.kind() == FitnessFunction::Kind::kOneMaxBlocks) {
      eps -= std::log(static_cast<double>(f.k())) / log_n;
    }
  } else {
    eps = -std::log(default_p_max(f, spec)) / log_n;
  }
  return std::clamp(eps, 0.01, 0.99);
}

TheoryContext make_context(const FitnessFunction& f, const MutationSpec& spec,
                           double s, double F) {
  TheoryContext ctx;
  ctx.n = f.n();
  ctx.d = f.d();
  ctx.s = s;
  ctx.F = F;
  ctx.gamma = default_gamma(f, spec);
  ctx.epsilon = default_epsilon(f, spec);
  ctx.p_max = default_p_max(f, spec);
  ctx.level_improvement = level_improvement_bounds(f, spec);
  ctx.p_min = *std::min_element(ctx.level_improvement.begin(),
                                ctx.level_improvement.end());
  return ctx;
}

}  // namespace saea
