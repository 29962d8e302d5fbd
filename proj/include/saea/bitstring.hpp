#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "saea/rng.hpp"

namespace saea {

// Fixed-length binary search point, bit-packed into 64-bit words. Position 0
// is the leftmost bit (the first character of to_string()); padding bits
// above position n-1 are kept zero.
class Bitstring {
 public:
  explicit Bitstring(int n) : n_(checked_size(n)), words_((n_ + 63) / 64, 0) {}

  static Bitstring random(int n, RngStream& rng) {
    Bitstring x(n);
    for (auto& w : x.words_) w = rng.next_u64();
    x.mask_padding();
    return x;
  }

  static Bitstring from_string(std::string_view s) {
    Bitstring x(static_cast<int>(s.size()));
    for (int i = 0; i < x.n_; ++i) {
      if (s[i] == '1') {
        x.set(i, true);
      } else if (s[i] != '0') {
        throw std::invalid_argument("Bitstring: expected only '0' or '1'");
      }
    }
    return x;
  }

  // Low n bits of v, least significant bit at position 0. Handy for
  // exhaustive enumeration.
  static Bitstring from_uint(std::uint64_t v, int n) {
    if (n > 64) throw std::invalid_argument("Bitstring::from_uint: n > 64");
    Bitstring x(n);
    x.words_[0] = v;
    x.mask_padding();
    return x;
  }

  int size() const { return n_; }

  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(int i, bool b) {
    const std::uint64_t m = 1ULL << (i & 63);
    if (b) {
      words_[i >> 6] |= m;
    } else {
      words_[i >> 6] &= ~m;
    }
  }

  void flip(int i) { words_[i >> 6] ^= 1ULL << (i & 63); }

  void flip_all() {
    for (auto& w : words_) w = ~w;
    mask_padding();
  }

  int count_ones() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  /// Length of the all-ones prefix.
  int leading_ones() const {
    int base = 0;
    for (auto w : words_) {
      const int t = std::countr_one(w);
      if (t < 64) return base + t < n_ ? base + t : n_;
      base += 64;
    }
    return n_;
  }

  /// Ones among positions [lo, hi).
  int count_range(int lo, int hi) const {
    if (hi <= lo) return 0;
    const int wlo = lo >> 6;
    const int whi = (hi - 1) >> 6;
    int c = 0;
    for (int w = wlo; w <= whi; ++w) {
      std::uint64_t word = words_[w];
      if (w == wlo) word &= ~0ULL << (lo & 63);
      if (w == whi) {
        const int end = hi - (whi << 6);  // 1..64
        if (end < 64) word &= (1ULL << end) - 1;
      }
      c += std::popcount(word);
    }
    return c;
  }

  void swap(Bitstring& other) noexcept {
    std::swap(n_, other.n_);
    words_.swap(other.words_);
  }

  std::string to_string() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (int i = 0; i < n_; ++i) {
      if (test(i)) s[i] = '1';
    }
    return s;
  }

  bool operator==(const Bitstring&) const = default;

 private:
  static int checked_size(int n) {
    if (n < 1) throw std::invalid_argument("Bitstring: length must be positive");
    return n;
  }

  void mask_padding() {
    if (const int rem = n_ & 63; rem != 0) words_.back() &= (1ULL << rem) - 1;
  }

  int n_;
  std::vector<std::uint64_t> words_;
};

}  // namespace saea
