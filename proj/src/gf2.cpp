#include "subrank/gf2.hpp"

#include <algorithm>
#include <stdexcept>

#include "subrank/binom.hpp"

namespace subrank::gf2 {

Subspace Subspace::span(int n, const std::vector<BitVec>& vectors) {
  Subspace s(n);
  for (const BitVec& input : vectors) {
    if (input.size() != n) {
      throw std::invalid_argument("Subspace::span: mixed ambient dimensions");
    }
    BitVec v = s.reduce(input);
    if (v.is_zero()) continue;
    int p = v.lowest_set();
    // Keep rows sorted by pivot and clear the new pivot from existing rows.
    size_t pos = 0;
    while (pos < s.pivots_.size() && s.pivots_[pos] < p) ++pos;
    s.basis_.insert(s.basis_.begin() + pos, v);
    s.pivots_.insert(s.pivots_.begin() + pos, p);
    for (size_t i = 0; i < s.basis_.size(); ++i) {
      if (i != pos && s.basis_[i].get(p)) s.basis_[i] ^= v;
    }
  }
  return s;
}

BitVec Subspace::reduce(BitVec v) const {
  for (size_t i = 0; i < basis_.size(); ++i) {
    if (v.get(pivots_[i])) v ^= basis_[i];
  }
  return v;
}

Subspace Subspace::orthogonal_complement() const {
  // Kernel of the basis matrix: one dual vector per free column.
  std::vector<bool> is_pivot(n_, false);
  for (int p : pivots_) is_pivot[p] = true;
  std::vector<BitVec> dual;
  dual.reserve(n_ - dim());
  for (int f = 0; f < n_; ++f) {
    if (is_pivot[f]) continue;
    BitVec y(n_);
    y.set(f, true);
    for (size_t i = 0; i < basis_.size(); ++i) {
      if (basis_[i].get(f)) y.set(pivots_[i], true);
    }
    dual.push_back(std::move(y));
  }
  return span(n_, dual);
}

WeightDistribution weight_distribution(const Subspace& v, uint64_t enumeration_limit) {
  if (v.dim() >= 64 || (uint64_t{1} << v.dim()) > enumeration_limit) {
    throw std::invalid_argument("weight_distribution: dimension exceeds enumeration limit");
  }
  WeightDistribution wd(v.ambient());
  v.for_each_element([&](const BitVec& x) { ++wd.counts[x.weight()]; });
  return wd;
}

WeightDistribution macwilliams(const WeightDistribution& dual_weights, const mpz_class& dual_size) {
  const int n = dual_weights.n;
  WeightDistribution wd(n);
  for (int m = 0; m <= n; ++m) {
    mpz_class acc = 0;
    for (int t = 0; t <= n; ++t) {
      if (dual_weights.counts[t] == 0) continue;
      acc += dual_weights.counts[t] * krawchouk_sum(n, m, t);
    }
    mpz_class q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), acc.get_mpz_t(), dual_size.get_mpz_t());
    if (rem != 0) {
      throw std::invalid_argument("macwilliams: non-integer count, inconsistent input");
    }
    wd.counts[m] = q;
  }
  return wd;
}

WeightDistribution subspace_weights(const Subspace& v, uint64_t enumeration_limit) {
  if (v.dim() < 64 && (uint64_t{1} << v.dim()) <= enumeration_limit) {
    return weight_distribution(v, enumeration_limit);
  }
  Subspace dual = v.orthogonal_complement();
  if (dual.dim() >= 64 || (uint64_t{1} << dual.dim()) > enumeration_limit) {
    throw std::invalid_argument("subspace_weights: neither side enumerable");
  }
  return macwilliams(weight_distribution(dual, enumeration_limit), dual.size());
}

namespace {

// f(k,m): pairs (x,y), |x|=|y|=k/2, x_k=y_k=0, with x-y a fixed weight-m vector.
mpz_class pair_factor_restricted(long k, long m) {
  if (m % 2 != 0 || m < 0 || m > k - 2) return 0;
  return binom(m, m / 2) * binom(k - m - 1, (k - m) / 2);
}

// Unrestricted analogue over all of F_2^k (m the weight of x-y, last coord 0).
mpz_class pair_factor_unrestricted(long k, long m) {
  if (m % 2 != 0 || m < 0 || m > k) return 0;
  return binom(m, m / 2) * binom(k - m, (k - m) / 2);
}

void check_pair_count_args(long k, const Subspace& v) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("pair_count: k must be even and >= 2");
  if (v.ambient() != k - 1) {
    throw std::invalid_argument("pair_count: subspace ambient dimension must equal k-1");
  }
}

}  // namespace

mpz_class restricted_pair_count(long k, const Subspace& v, uint64_t enumeration_limit) {
  check_pair_count_args(k, v);
  WeightDistribution wd = subspace_weights(v, enumeration_limit);
  mpz_class acc = 0;
  for (int m = 0; m <= wd.n; ++m) {
    if (wd.counts[m] == 0) continue;
    acc += wd.counts[m] * pair_factor_restricted(k, m);
  }
  return acc;
}

mpz_class unrestricted_pair_count(long k, const Subspace& v, uint64_t enumeration_limit) {
  check_pair_count_args(k, v);
  WeightDistribution wd = subspace_weights(v, enumeration_limit);
  mpz_class acc = 0;
  for (int m = 0; m <= wd.n; ++m) {
    if (wd.counts[m] == 0) continue;
    acc += wd.counts[m] * pair_factor_unrestricted(k, m);
  }
  return acc;
}

}  // namespace subrank::gf2
