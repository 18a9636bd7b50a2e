#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "subrank/gf2.hpp"

namespace subrank::sampling {

// Expands the single user-visible seed into a per-instance stream seed.
inline uint64_t derive_seed(uint64_t user_seed, std::string_view instance_key) {
  uint64_t h = 1469598103934665603ull ^ user_seed;
  for (unsigned char c : instance_key) {
    h ^= c;
    h *= 1099511628211ull;
  }
  // splitmix64 finalizer
  h += 0x9e3779b97f4a7c15ull;
  h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ull;
  h = (h ^ (h >> 27)) * 0x94d049bb133111ebull;
  return h ^ (h >> 31);
}

inline BitVec random_bitvec(std::mt19937_64& rng, int n) {
  BitVec v(n);
  for (int base = 0; base < n; base += 64) {
    uint64_t w = rng();
    for (int i = base; i < std::min(base + 64, n); ++i) {
      v.set(i, (w >> (i - base)) & 1);
    }
  }
  return v;
}

// Uniform dim-d subspace representative: random d x n full-rank rows with
// rejection on rank deficiency.
inline gf2::Subspace random_subspace(std::mt19937_64& rng, int n, int d) {
  for (;;) {
    std::vector<BitVec> rows;
    rows.reserve(d);
    for (int i = 0; i < d; ++i) rows.push_back(random_bitvec(rng, n));
    gf2::Subspace s = gf2::Subspace::span(n, rows);
    if (s.dim() == d) return s;
  }
}

// Samples the dual at fixed codimension c and returns its complement,
// matching the parameterization of the high-dimension lemmas.
inline gf2::Subspace random_subspace_codim(std::mt19937_64& rng, int n, int c) {
  return random_subspace(rng, n, c).orthogonal_complement();
}

// Random dim-d subspace of the even-weight subspace of F_2^n.
inline gf2::Subspace random_even_weight_subspace(std::mt19937_64& rng, int n, int d) {
  for (;;) {
    std::vector<BitVec> rows;
    rows.reserve(d);
    for (int i = 0; i < d; ++i) {
      BitVec v = random_bitvec(rng, n);
      if (v.weight() % 2 == 1) v.flip(static_cast<int>(rng() % n));
      rows.push_back(std::move(v));
    }
    gf2::Subspace s = gf2::Subspace::span(n, rows);
    if (s.dim() == d) return s;
  }
}

}  // namespace subrank::sampling
