#pragma once

#include <optional>
#include <vector>

#include "saea/bitstring.hpp"
#include "saea/rng.hpp"

namespace saea {

enum class MutationKind { kStandard, kHeavyTailed };

struct MutationSpec {
  MutationKind kind = MutationKind::kStandard;
  double chi = 1.0;   // standard: per-bit rate chi/n
  double beta = 2.0;  // heavy-tailed power-law exponent, > 1
  std::optional<double> explicit_rate;  // overrides chi/n when set
  // Heavy-tailed only: draw one strength per generation shared by all
  // offspring instead of redrawing per offspring.
  bool shared_strength = false;

  /// Resolved per-bit rate for the standard operator; in (0, 1].
  double rate_for(int n) const;
  void validate(int n) const;
};

// Truncated power law on {1,...,max(1, floor(n/2))} with P(c) proportional
// to c^-beta. Sampling is inverse-CDF over a precomputed cumulative table.
class PowerLawSampler {
 public:
  PowerLawSampler(int n, double beta);

  int sample(RngStream& rng) const;
  double pmf(int c) const;
  int support_max() const { return static_cast<int>(cdf_.size()); }

 private:
  std::vector<double> cdf_;  // normalized cumulative weights
  double total_;
  double beta_;
};

/// Flips each bit independently with probability rate; input untouched.
Bitstring standard_bit_mutation(const Bitstring& x, double rate, RngStream& rng);

/// In-place variant; dst is overwritten with the mutated copy of x.
void standard_bit_mutation_into(Bitstring& dst, const Bitstring& x, double rate,
                                RngStream& rng);

// Strength draw for the heavy-tailed operator. The cumulative table is built
// once per (n, beta) and cached per thread.
int heavy_tailed_sample_strength(int n, double beta, RngStream& rng);

// Mutation operator bound to a problem size; owns the power-law table so the
// per-offspring path never rebuilds it.
class Mutator {
 public:
  Mutator(const MutationSpec& spec, int n);

  Bitstring operator()(const Bitstring& x, RngStream& rng) const;
  void mutate_into(Bitstring& dst, const Bitstring& x, RngStream& rng) const;

  /// Rate for one offspring; draws the heavy-tailed strength if applicable.
  double draw_rate(RngStream& rng) const;

  const MutationSpec& spec() const { return spec_; }
  int n() const { return n_; }

 private:
  MutationSpec spec_;
  int n_;
  double rate_ = 0.0;  // standard kind only
  std::optional<PowerLawSampler> sampler_;
};

}  // namespace saea
