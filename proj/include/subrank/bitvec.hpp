#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace subrank {

// Packed vector over F_2. Coordinate i (0-based) lives at bit i of word i/64,
// so coordinate 1 of the paper's strings is bit 0. Ambient dimension capped at
// kMaxAmbient; k <= 2000 needs at most 1999.
class BitVec {
 public:
  static constexpr int kMaxAmbient = 4096;

  BitVec() = default;
  explicit BitVec(int n) : n_(check_n(n)), w_((n + 63) / 64, 0) {}

  // Parses "0110..."; character j is coordinate j (0-based).
  static BitVec from_string(std::string_view s) {
    BitVec v(static_cast<int>(s.size()));
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        v.set(static_cast<int>(i), true);
      } else if (s[i] != '0') {
        throw std::invalid_argument("BitVec: expected characters in {0,1}");
      }
    }
    return v;
  }

  int size() const { return n_; }

  bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

  void set(int i, bool b) {
    uint64_t mask = uint64_t{1} << (i & 63);
    if (b) {
      w_[i >> 6] |= mask;
    } else {
      w_[i >> 6] &= ~mask;
    }
  }

  void flip(int i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }

  int weight() const {
    int w = 0;
    for (uint64_t x : w_) w += std::popcount(x);
    return w;
  }

  bool is_zero() const {
    for (uint64_t x : w_) {
      if (x) return false;
    }
    return true;
  }

  // Index of the first set coordinate, -1 when zero.
  int lowest_set() const {
    for (size_t j = 0; j < w_.size(); ++j) {
      if (w_[j]) return static_cast<int>(j * 64 + std::countr_zero(w_[j]));
    }
    return -1;
  }

  BitVec& operator^=(const BitVec& o) {
    for (size_t j = 0; j < w_.size(); ++j) w_[j] ^= o.w_[j];
    return *this;
  }

  friend BitVec operator^(BitVec a, const BitVec& b) {
    a ^= b;
    return a;
  }

  // <x, y> over F_2.
  static int dot(const BitVec& a, const BitVec& b) {
    uint64_t acc = 0;
    for (size_t j = 0; j < a.w_.size(); ++j) acc ^= a.w_[j] & b.w_[j];
    return std::popcount(acc) & 1;
  }

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

  // Lexicographic by coordinate with '0' < '1', coordinate 0 most significant.
  bool operator<(const BitVec& o) const {
    for (size_t j = 0; j < w_.size(); ++j) {
      uint64_t d = w_[j] ^ o.w_[j];
      if (d) return !((w_[j] >> std::countr_zero(d)) & 1);
    }
    return false;
  }

  std::string to_string() const {
    std::string s(n_, '0');
    for (int i = 0; i < n_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  // Keeps the first m coordinates.
  BitVec truncated(int m) const {
    BitVec v(m);
    for (int i = 0; i < m; ++i) v.set(i, get(i));
    return v;
  }

  // Appends zero coordinates up to n.
  BitVec extended(int n) const {
    BitVec v(n);
    for (int i = 0; i < n_; ++i) v.set(i, get(i));
    return v;
  }

  const std::vector<uint64_t>& words() const { return w_; }

  // Low 64 coordinates; enough for brute-force loops with n <= 64.
  uint64_t low_word() const { return w_.empty() ? 0 : w_[0]; }

  static BitVec from_low_word(int n, uint64_t bits) {
    BitVec v(n);
    if (!v.w_.empty()) v.w_[0] = (n >= 64) ? bits : (bits & ((uint64_t{1} << n) - 1));
    return v;
  }

 private:
  static int check_n(int n) {
    if (n < 0 || n > kMaxAmbient) throw std::invalid_argument("BitVec: bad ambient dimension");
    return n;
  }

  int n_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace subrank
