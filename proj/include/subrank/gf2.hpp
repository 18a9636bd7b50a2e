#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "subrank/bitvec.hpp"

namespace subrank::gf2 {

inline constexpr uint64_t kDefaultEnumerationLimit = uint64_t{1} << 24;

// Counts[t] = number of subspace elements of Hamming weight t.
struct WeightDistribution {
  int n = 0;
  std::vector<mpz_class> counts;

  WeightDistribution() = default;
  explicit WeightDistribution(int ambient) : n(ambient), counts(ambient + 1, 0) {}

  mpz_class total() const {
    mpz_class s = 0;
    for (const auto& c : counts) s += c;
    return s;
  }
};

// Subspace of F_2^n held as a reduced row-echelon basis, pivots increasing.
// Equal subspaces have identical representations, so == is representation
// equality.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(int n) : n_(n) {}

  // Canonicalizes any spanning set. All vectors must share the ambient
  // dimension n.
  static Subspace span(int n, const std::vector<BitVec>& vectors);

  int ambient() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<BitVec>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  mpz_class size() const { return mpz_class(1) << dim(); }

  // Reduces v against the basis; result is zero iff v is a member.
  BitVec reduce(BitVec v) const;
  bool contains(const BitVec& v) const { return reduce(v).is_zero(); }

  Subspace orthogonal_complement() const;

  bool operator==(const Subspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }

  // Visits all 2^dim elements by a Gray-code walk (one basis xor per step).
  template <class F>
  void for_each_element(F&& f) const {
    BitVec cur(n_);
    f(cur);
    uint64_t count = uint64_t{1} << dim();
    for (uint64_t g = 1; g < count; ++g) {
      cur ^= basis_[std::countr_zero(g)];
      f(cur);
    }
  }

 private:
  int n_ = 0;
  std::vector<BitVec> basis_;
  std::vector<int> pivots_;
};

// Exact weight distribution by enumeration; requires 2^dim <= enumeration_limit.
WeightDistribution weight_distribution(const Subspace& v,
                                       uint64_t enumeration_limit = kDefaultEnumerationLimit);

// Recovers the weight distribution of V from that of its dual:
// W_V(m) = (1/|V^perp|) sum_t W_{V^perp}(t) K_m^n(t). Throws when a quotient
// is not an integer (inconsistent input).
WeightDistribution macwilliams(const WeightDistribution& dual_weights, const mpz_class& dual_size);

// Weight distribution via whichever side of the duality is enumerable.
WeightDistribution subspace_weights(const Subspace& v,
                                    uint64_t enumeration_limit = kDefaultEnumerationLimit);

// |{(x,y) : |x|=|y|=k/2, x_k=y_k=0, x-y in V}| for V <= F_2^(k-1) stored at
// ambient k-1 (the x_k = 0 coordinate is implicit). Equals sum_m a_m f(k,m).
mpz_class restricted_pair_count(long k, const Subspace& v,
                                uint64_t enumeration_limit = kDefaultEnumerationLimit);

// Same without the x_k = y_k = 0 restriction; x, y range over all of F_2^k.
// V is still given at ambient k-1 and embedded with last coordinate 0.
mpz_class unrestricted_pair_count(long k, const Subspace& v,
                                  uint64_t enumeration_limit = kDefaultEnumerationLimit);

}  // namespace subrank::gf2
