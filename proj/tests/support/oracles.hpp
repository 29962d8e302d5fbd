#pragma once

// Literal-formula fitness oracles for tests. Deliberately naive: they follow
// the defining sums/products term by term, independent of the library's
// word-level implementations.

#include "saea/bitstring.hpp"

namespace saea::testing {

inline int onemax_literal(const Bitstring& x) {
  int total = 0;
  for (int i = 0; i < x.size(); ++i) total += x.test(i) ? 1 : 0;
  return total;
}

inline int leadingones_literal(const Bitstring& x) {
  // sum_{i=1..n} prod_{j=1..i} x_j
  int total = 0;
  for (int i = 0; i < x.size(); ++i) {
    int prod = 1;
    for (int j = 0; j <= i; ++j) prod *= x.test(j) ? 1 : 0;
    total += prod;
  }
  return total;
}

inline int onemaxblocks_literal(const Bitstring& x, int k) {
  // sum_{j=1..n/k} (prod_{i=1..(j-1)k} x_i) * (sum_{i=(j-1)k+1..jk} x_i)
  const int blocks = x.size() / k;
  int total = 0;
  for (int j = 1; j <= blocks; ++j) {
    int prod = 1;
    for (int i = 0; i < (j - 1) * k; ++i) prod *= x.test(i) ? 1 : 0;
    int ones = 0;
    for (int i = (j - 1) * k; i < j * k; ++i) ones += x.test(i) ? 1 : 0;
    total += prod * ones;
  }
  return total;
}

}  // namespace saea::testing
