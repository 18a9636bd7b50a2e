#pragma once

#include <gmpxx.h>

#include <vector>

#include "subrank/bitvec.hpp"
#include "subrank/gf2.hpp"
#include "subrank/interval.hpp"

namespace subrank::spectral {

using CertifiedReal = num::Interval;

// 2^n values indexed by {0,1}^n (coordinate i of the point is bit i of the
// table index).
template <class T>
struct Table {
  int n = 0;
  std::vector<T> values;

  explicit Table(int n_in) : n(n_in), values(size_t{1} << n_in) {}
};

using BooleanTable = Table<double>;
using RationalTable = Table<mpq_class>;

// In-place fast transform: out(z) = 2^-n sum_x f(x) (-1)^(z.x).
void walsh_transform(BooleanTable& f);
void walsh_transform(RationalTable& f);

// sum_{x,y} f(x) f(y) g(x+y) == 2^(2n) sum_z fhat(z)^2 ghat(z), within
// relative tolerance for the double path.
bool convolution_identity_check(const BooleanTable& f, const BooleanTable& g,
                                double relative_tolerance = 1e-9);
// Exact rational arithmetic path.
bool convolution_identity_check(const RationalTable& f, const RationalTable& g);

// K_k^n(t), exact.
mpz_class krawchouk(long n, long k, long t);

// Closed form of K^n_((n-1)/2)(t) for odd n; throws if the division is not
// exact (an implementation fault, not an input error).
mpz_class middle_krawchouk_closed(long n, long t);

// fhat of a subspace indicator: value 1/|V^perp| on V^perp, zero elsewhere.
struct SparseSpectrum {
  int n = 0;
  mpq_class value;               // common value on the support
  std::vector<BitVec> support;   // elements of V^perp, sorted
};

SparseSpectrum subspace_indicator_hat(const gf2::Subspace& v,
                                      uint64_t enumeration_limit = gf2::kDefaultEnumerationLimit);

struct KklRow {
  long t = 0;
  mpz_class lhs_t;     // |(V^perp)_t|
  mpz_class lhs_nt;    // |(V^perp)_(n-t)|
  CertifiedReal rhs;   // (2e ln2 c / t)^t
  bool holds = false;
};

struct KklReport {
  bool all_hold = false;
  long c = 0;
  std::vector<KklRow> rows;
};

// |(V^perp)_t| <= (2e ln2 c/t)^t for 1 <= t <= ln(2)c, and the same at n-t.
// c = n - dim(V) must be >= 2. Exact left sides, certified right sides.
KklReport kkl_subspace_check(const gf2::Subspace& v, int prec = 0);

// |V|/2^n sum_t K^n_((n-1)/2)(t)^2 |(V^perp)_t|, exact; n odd. Equals the
// number of pairs |x| = |y| = (n-1)/2 with x+y in V.
mpz_class pair_count_fourier(long n, const gf2::Subspace& v,
                             uint64_t enumeration_limit = gf2::kDefaultEnumerationLimit);

// Brute-force companion of pair_count_fourier, quadratic over weight-w
// vectors; usable for n <= 30 or so.
mpz_class pair_count_brute(long n, long w, const gf2::Subspace& v);

// f(n,c) = 16 c^2/n^2 + (e ln2 c / n)^(ln2 c), certified enclosure.
CertifiedReal f_nc(long n, long c, int prec = 0);

// sum_{1<=t<=n-1} C((n-1)/2, floor(t/2))^2 / C(n,t)^2 |(V^perp)_t| <= f(n,c),
// exact rational left side against the certified enclosure.
struct Lemma1Result {
  bool holds = false;
  mpq_class lhs;
  CertifiedReal rhs;
};

Lemma1Result lemma1_instance_detail(long n, const gf2::Subspace& v, int prec = 0);
bool lemma1_instance_check(long n, const gf2::Subspace& v, int prec = 0);

// 2 + f(n,c) <= 2^c C(n,(n-1)/2)^((1-c)/(n-1)) for odd n >= 59, 2 <= c <= n/12.
// Interval first; exact rational power comparison on straddle.
bool lemma2_instance_check(long n, long c, int prec = 0);

// C(n/2,m)/C(n+1,2m+1) <= 2((2m+1)/(2(n-m+1)))^(m+1)  for 0 <= m <= n/3, and
// C(n/2,m)/C(n+1,2m)  <= (m/(n-m+1))^m                for 1 <= m <= (n+1)/3.
// Exact rational comparisons of whichever inequalities apply at (n, m).
bool binomial_ratio_bounds_check(long n, long m);

struct SumRatioResult {
  bool holds = false;             // constant 4/sqrt(pi)
  num::Verdict sharp_constant;    // informational: constant sqrt(2/pi)
  mpq_class lhs;
};

// (sum_{m even<=s} C(k/2,m/2)^2) / (sum_{m even<=s} C(k,m)) against
// (4/sqrt(pi)) sqrt(k/(s(k-s))) via the squared form LHS^2 pi s(k-s) <= 16k.
SumRatioResult sumratio_check(long k, long s, int prec = 0);

// sqrt(2 pi n)(n/e)^n e^(1/(12n+1)) < n! < sqrt(2 pi n)(n/e)^n e^(1/(12n)).
bool robbins_check(long n, int prec = 0);

}  // namespace subrank::spectral
