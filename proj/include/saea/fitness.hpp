#pragma once

#include <functional>
#include <string>

#include "saea/bitstring.hpp"

namespace saea {

/// Number of one-bits.
int onemax(const Bitstring& x);

/// Length of the longest all-ones prefix.
int leadingones(const Bitstring& x);

// One-bits in the longest prefix of complete all-ones blocks of size k, plus
// the one-bits of the first incomplete block. Requires 1 <= k <= n and
// k dividing n.
int onemaxblocks(const Bitstring& x, int k);

// Pseudo-Boolean benchmark with integer fitness range {0,...,d}; exactly the
// points of fitness d are optimal.
class FitnessFunction {
 public:
  enum class Kind { kOneMax, kLeadingOnes, kOneMaxBlocks, kCustom };
  using Eval = std::function<int(const Bitstring&)>;

  static FitnessFunction onemax(int n);
  static FitnessFunction leadingones(int n);
  static FitnessFunction onemaxblocks(int n, int k);

  /// Selection by name: "onemax" | "leadingones" | "onemaxblocks" (needs k).
  static FitnessFunction by_name(const std::string& name, int n, int k = 0);

  /// Arbitrary evaluator; used by tests and probes, not reachable by name.
  static FitnessFunction custom(std::string name, int n, int d, Eval eval);

  int operator()(const Bitstring& x) const {
    switch (kind_) {
      case Kind::kOneMax:
        return saea::onemax(x);
      case Kind::kLeadingOnes:
        return saea::leadingones(x);
      case Kind::kOneMaxBlocks:
        return saea::onemaxblocks(x, k_);
      case Kind::kCustom:
        break;
    }
    return eval_(x);
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  int n() const { return n_; }
  int k() const { return k_; }  // block size, 0 when not applicable
  int d() const { return d_; }  // number of non-optimal fitness values
  bool is_optimal(int fitness) const { return fitness == d_; }

 private:
  FitnessFunction(Kind kind, std::string name, int n, int k, int d, Eval eval)
      : kind_(kind), name_(std::move(name)), n_(n), k_(k), d_(d),
        eval_(std::move(eval)) {}

  Kind kind_;
  std::string name_;
  int n_;
  int k_;
  int d_;
  Eval eval_;
};

// Exhaustive check that every non-optimal point has a strictly better Hamming
// neighbour. Costs 2^n * n evaluations; guarded to n <= 20.
bool is_unimodal_exhaustive(const FitnessFunction& f);

}  // namespace saea
