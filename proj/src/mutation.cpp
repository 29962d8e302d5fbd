#include "saea/mutation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace saea {

double MutationSpec::rate_for(int n) const {
  const double rate = explicit_rate ? *explicit_rate : chi / n;
  if (!(rate > 0.0) || rate > 1.0) {
    throw std::invalid_argument("mutation rate must be in (0, 1]");
  }
  return rate;
}

void MutationSpec::validate(int n) const {
  if (n < 1) throw std::invalid_argument("mutation: n must be positive");
  if (kind == MutationKind::kStandard) {
    rate_for(n);
  } else {
    if (n < 2) throw std::invalid_argument("heavy-tailed mutation requires n >= 2");
    if (!(beta > 1.0)) throw std::invalid_argument("heavy-tailed beta must exceed 1");
    if (explicit_rate) {
      throw std::invalid_argument("explicit rate only applies to standard bit mutation");
    }
  }
}

PowerLawSampler::PowerLawSampler(int n, double beta) : beta_(beta) {
  if (n < 2) throw std::invalid_argument("PowerLawSampler: n >= 2 required");
  if (!(beta > 1.0)) throw std::invalid_argument("PowerLawSampler: beta must exceed 1");
  const int m = std::max(1, n / 2);
  cdf_.resize(m);
  double acc = 0.0;
  for (int c = 1; c <= m; ++c) {
    acc += std::pow(static_cast<double>(c), -beta);
    cdf_[c - 1] = acc;
  }
  total_ = acc;
  for (auto& v : cdf_) v /= total_;
  cdf_.back() = 1.0;
}

int PowerLawSampler::sample(RngStream& rng) const {
  const double u = rng.next_double();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<int>(it - cdf_.begin()) + 1;
}

double PowerLawSampler::pmf(int c) const {
  if (c < 1 || c > support_max()) return 0.0;
  return std::pow(static_cast<double>(c), -beta_) / total_;
}

void standard_bit_mutation_into(Bitstring& dst, const Bitstring& x, double rate,
                                RngStream& rng) {
  if (rate < 0.0 || rate > 1.0) {
    throw std::invalid_argument("standard_bit_mutation: rate must be in [0, 1]");
  }
  dst = x;
  const int n = x.size();
  if (rate == 0.0) return;
  if (rate == 1.0) {
    dst.flip_all();
    return;
  }
  // Geometric gaps between flips; each bit is hit independently with
  // probability rate.
  const double log_keep = std::log1p(-rate);
  int base = 0;
  while (base < n) {
    const double gap = std::floor(std::log(rng.next_double_pos()) / log_keep);
    if (gap >= static_cast<double>(n - base)) return;
    const int idx = base + static_cast<int>(gap);
    dst.flip(idx);
    base = idx + 1;
  }
}

Bitstring standard_bit_mutation(const Bitstring& x, double rate, RngStream& rng) {
  Bitstring y(x.size());
  standard_bit_mutation_into(y, x, rate, rng);
  return y;
}

int heavy_tailed_sample_strength(int n, double beta, RngStream& rng) {
  thread_local std::map<std::pair<int, double>, PowerLawSampler> cache;
  auto it = cache.find({n, beta});
  if (it == cache.end()) {
    it = cache.emplace(std::make_pair(n, beta), PowerLawSampler(n, beta)).first;
  }
  return it->second.sample(rng);
}

Mutator::Mutator(const MutationSpec& spec, int n) : spec_(spec), n_(n) {
  spec_.validate(n);
  if (spec_.kind == MutationKind::kStandard) {
    rate_ = spec_.rate_for(n);
  } else {
    sampler_.emplace(n, spec_.beta);
  }
}

double Mutator::draw_rate(RngStream& rng) const {
  if (spec_.kind == MutationKind::kStandard) return rate_;
  return static_cast<double>(sampler_->sample(rng)) / n_;
}

void Mutator::mutate_into(Bitstring& dst, const Bitstring& x, RngStream& rng) const {
  standard_bit_mutation_into(dst, x, draw_rate(rng), rng);
}

Bitstring Mutator::operator()(const Bitstring& x, RngStream& rng) const {
  Bitstring y(x.size());
  mutate_into(y, x, rng);
  return y;
}

}  // namespace saea
