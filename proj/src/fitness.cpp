#include "saea/fitness.hpp"

#include <stdexcept>
#include <utility>

namespace saea {

int onemax(const Bitstring& x) { return x.count_ones(); }

int leadingones(const Bitstring& x) { return x.leading_ones(); }

int onemaxblocks(const Bitstring& x, int k) {
  const int n = x.size();
  if (k < 1 || k > n) throw std::invalid_argument("onemaxblocks: k must be in [1, n]");
  if (n % k != 0) throw std::invalid_argument("onemaxblocks: k must divide n");
  const int prefix = x.leading_ones();
  if (prefix == n) return n;
  // Blocks before the one holding the first zero are complete; that block is
  // the first incomplete one and contributes all of its ones.
  const int block = prefix / k;
  return block * k + x.count_range(block * k, (block + 1) * k);
}

FitnessFunction FitnessFunction::onemax(int n) {
  return FitnessFunction(Kind::kOneMax, "onemax", n, 0, n, nullptr);
}

FitnessFunction FitnessFunction::leadingones(int n) {
  return FitnessFunction(Kind::kLeadingOnes, "leadingones", n, 0, n, nullptr);
}

FitnessFunction FitnessFunction::onemaxblocks(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("onemaxblocks: k must be in [1, n]");
  if (n % k != 0) throw std::invalid_argument("onemaxblocks: k must divide n");
  return FitnessFunction(Kind::kOneMaxBlocks, "onemaxblocks", n, k, n, nullptr);
}

FitnessFunction FitnessFunction::by_name(const std::string& name, int n, int k) {
  if (n < 1) throw std::invalid_argument("fitness function: n must be positive");
  if (name == "onemax" || name == "leadingones") {
    if (k != 0) throw std::invalid_argument("k is only valid for onemaxblocks");
    return name == "onemax" ? onemax(n) : leadingones(n);
  }
  if (name == "onemaxblocks") {
    if (k == 0) throw std::invalid_argument("onemaxblocks requires k");
    return onemaxblocks(n, k);
  }
  throw std::invalid_argument("unknown fitness function '" + name +
                              "' (expected onemax|leadingones|onemaxblocks)");
}

FitnessFunction FitnessFunction::custom(std::string name, int n, int d, Eval eval) {
  if (!eval) throw std::invalid_argument("custom fitness: evaluator required");
  return FitnessFunction(Kind::kCustom, std::move(name), n, 0, d, std::move(eval));
}

bool is_unimodal_exhaustive(const FitnessFunction& f) {
  const int n = f.n();
  if (n > 20) throw std::invalid_argument("is_unimodal_exhaustive: n > 20");
  for (std::uint64_t v = 0; v < (1ULL << n); ++v) {
    Bitstring x = Bitstring::from_uint(v, n);
    const int fx = f(x);
    if (f.is_optimal(fx)) continue;
    bool improvable = false;
    for (int i = 0; i < n && !improvable; ++i) {
      x.flip(i);
      improvable = f(x) > fx;
      x.flip(i);
    }
    if (!improvable) return false;
  }
  return true;
}

}  // namespace saea
