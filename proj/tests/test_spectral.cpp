#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "subrank/binom.hpp"
#include "subrank/sampling.hpp"
#include "subrank/spectral.hpp"

using namespace subrank::spectral;
using subrank::BitVec;
using subrank::binom;
using subrank::gf2::Subspace;
using subrank::num::Interval;
using subrank::num::Verdict;

namespace {

// Oracle: dense transform straight from the definition.
BooleanTable dense_transform(const BooleanTable& f) {
  BooleanTable out(f.n);
  const size_t size = f.values.size();
  for (size_t z = 0; z < size; ++z) {
    double acc = 0.0;
    for (size_t x = 0; x < size; ++x) {
      acc += f.values[x] * ((std::popcount(z & x) & 1) ? -1.0 : 1.0);
    }
    out.values[z] = acc / static_cast<double>(size);
  }
  return out;
}

Subspace axis_subspace(int n, int d) {
  // Bit strings beginning with n-d zeros.
  std::vector<BitVec> basis;
  for (int i = n - d; i < n; ++i) {
    BitVec v(n);
    v.set(i, true);
    basis.push_back(v);
  }
  return Subspace::span(n, basis);
}

}  // namespace

TEST_CASE("walsh transform: point cases and the double-transform identity") {
  BooleanTable ones(3);
  for (double& v : ones.values) v = 1.0;
  BooleanTable oh = ones;
  walsh_transform(oh);
  CHECK(oh.values[0] == doctest::Approx(1.0));
  for (size_t z = 1; z < 8; ++z) CHECK(oh.values[z] == doctest::Approx(0.0));

  // f = character of w: transform is the indicator of w.
  const size_t w = 5;
  BooleanTable chi(3);
  for (size_t x = 0; x < 8; ++x) chi.values[x] = (std::popcount(w & x) & 1) ? -1.0 : 1.0;
  walsh_transform(chi);
  for (size_t z = 0; z < 8; ++z) CHECK(chi.values[z] == doctest::Approx(z == w ? 1.0 : 0.0));

  std::mt19937_64 rng(subrank::sampling::derive_seed(1, "walsh-double"));
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + static_cast<int>(rng() % 12);
    BooleanTable f(n);
    for (double& v : f.values) v = static_cast<double>(rng() % 2000) / 1000.0 - 1.0;
    BooleanTable g = f;
    walsh_transform(g);
    // Matches the dense oracle on small sizes.
    if (n <= 8) {
      BooleanTable d = dense_transform(f);
      for (size_t z = 0; z < f.values.size(); ++z) {
        CHECK(g.values[z] == doctest::Approx(d.values[z]).epsilon(1e-9));
      }
    }
    walsh_transform(g);
    const double scale = static_cast<double>(f.values.size());
    for (size_t z = 0; z < f.values.size(); ++z) {
      CHECK(g.values[z] * scale == doctest::Approx(f.values[z]).epsilon(1e-9));
    }
  }
}

TEST_CASE("parseval") {
  std::mt19937_64 rng(subrank::sampling::derive_seed(1, "parseval"));
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 10);
    BooleanTable f(n);
    for (double& v : f.values) v = static_cast<double>(rng() % 1000) / 100.0 - 5.0;
    double lhs = 0.0;
    for (double v : f.values) lhs += v * v;
    lhs /= static_cast<double>(f.values.size());
    BooleanTable fh = f;
    walsh_transform(fh);
    double rhs = 0.0;
    for (double v : fh.values) rhs += v * v;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("convolution identity") {
  BooleanTable point(2);
  point.values[0] = 1.0;
  CHECK(convolution_identity_check(point, point));

  std::mt19937_64 rng(subrank::sampling::derive_seed(1, "conv"));
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    RationalTable f(n), g(n);
    for (auto& v : f.values) v = static_cast<long>(rng() % 2);
    for (auto& v : g.values) v = static_cast<long>(rng() % 2);
    CHECK(convolution_identity_check(f, g));
  }
  // One larger exact case.
  RationalTable f(10), g(10);
  for (size_t i = 0; i < f.values.size(); ++i) {
    f.values[i] = static_cast<long>((i * 2654435761u) % 2);
    g.values[i] = static_cast<long>((i * 40503u) % 2);
  }
  CHECK(convolution_identity_check(f, g));
}

TEST_CASE("convolution identity composed with weight and subspace indicators") {
  // f = weight-w indicator, g = subspace indicator: the identity's left side
  // is the pair count consumed by the Fourier counting route.
  const int n = 7;
  const int w = 3;
  std::mt19937_64 rng(subrank::sampling::derive_seed(1, "conv-pair"));
  Subspace v = subrank::sampling::random_subspace(rng, n, 3);
  RationalTable f(n), g(n);
  for (size_t x = 0; x < f.values.size(); ++x) {
    f.values[x] = std::popcount(x) == w ? 1 : 0;
    g.values[x] = v.contains(BitVec::from_low_word(n, x)) ? 1 : 0;
  }
  CHECK(convolution_identity_check(f, g));
  mpq_class lhs = 0;
  for (size_t x = 0; x < f.values.size(); ++x) {
    if (f.values[x] == 0) continue;
    for (size_t y = 0; y < f.values.size(); ++y) {
      lhs += f.values[x] * f.values[y] * g.values[x ^ y];
    }
  }
  CHECK(mpq_class(pair_count_brute(n, w, v)) == lhs);
  CHECK(mpq_class(pair_count_fourier(n, v)) == lhs);
}

TEST_CASE("krawchouk: endpoints, linear case, character-sum oracle") {
  for (long n = 1; n <= 14; ++n) {
    for (long k = 0; k <= n; ++k) {
      CHECK(krawchouk(n, k, 0) == binom(n, k));
    }
    for (long t = 0; t <= n; ++t) {
      CHECK(krawchouk(n, 1, t) == n - 2 * t);
    }
  }
  // Character sum: K_k^n(|x|) = sum over |z| = k of (-1)^(z.x).
  std::mt19937_64 rng(subrank::sampling::derive_seed(1, "kraw-chars"));
  for (long n = 1; n <= 14; ++n) {
    for (int trial = 0; trial < 12; ++trial) {
      long k = static_cast<long>(rng() % (n + 1));
      long t = static_cast<long>(rng() % (n + 1));
      uint64_t x = 0;
      // A fixed vector of weight t.
      for (long i = 0; i < t; ++i) x |= uint64_t{1} << i;
      long acc = 0;
      for (uint64_t z = 0; z < (uint64_t{1} << n); ++z) {
        if (std::popcount(z) != k) continue;
        acc += (std::popcount(z & x) & 1) ? -1 : 1;
      }
      CHECK(krawchouk(n, k, t) == acc);
    }
  }
  CHECK_THROWS_AS(krawchouk(4, 5, 0), std::invalid_argument);
}

TEST_CASE("middle krawchouk closed form") {
  CHECK(middle_krawchouk_closed(3, 0) == 3);
  CHECK(middle_krawchouk_closed(3, 1) == 1);
  for (long n = 1; n <= 31; n += 2) {
    for (long t = 0; t <= n; ++t) {
      CHECK(middle_krawchouk_closed(n, t) == krawchouk(n, (n - 1) / 2, t));
    }
  }
  CHECK_THROWS_AS(middle_krawchouk_closed(4, 0), std::invalid_argument);
}

TEST_CASE("subspace indicator spectrum") {
  Subspace zero(4);
  SparseSpectrum flat = subspace_indicator_hat(zero);
  CHECK(flat.support.size() == 16);
  CHECK(flat.value == mpq_class(1, 16));

  Subspace full = axis_subspace(4, 4);
  SparseSpectrum point = subspace_indicator_hat(full);
  CHECK(point.support.size() == 1);
  CHECK(point.support[0].is_zero());
  CHECK(point.value == 1);

  std::mt19937_64 rng(subrank::sampling::derive_seed(1, "hat-dense"));
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 11);
    Subspace v = subrank::sampling::random_subspace(rng, n, static_cast<int>(rng() % (n + 1)));
    BooleanTable f(n);
    for (size_t x = 0; x < f.values.size(); ++x) {
      f.values[x] = v.contains(BitVec::from_low_word(n, x)) ? 1.0 : 0.0;
    }
    walsh_transform(f);
    SparseSpectrum sparse = subspace_indicator_hat(v);
    double value = mpq_class(sparse.value).get_d();
    size_t idx = 0;
    for (size_t z = 0; z < f.values.size(); ++z) {
      BitVec zb = BitVec::from_low_word(n, z);
      bool in_support = std::binary_search(sparse.support.begin(), sparse.support.end(), zb);
      CHECK(f.values[z] == doctest::Approx(in_support ? value : 0.0).epsilon(1e-9));
      if (in_support) ++idx;
    }
    CHECK(idx == sparse.support.size());
  }
}

TEST_CASE("kkl corollary bound: axis-aligned near-tight family") {
  for (int n : {8, 12, 16, 24}) {
    for (int d = 1; d <= n - 2; d += 3) {
      Subspace v = axis_subspace(n, d);
      const long c = n - d;
      if (c < 2) continue;
      KklReport rep = kkl_subspace_check(v);
      CHECK(rep.all_hold);
      CHECK(rep.c == c);
      for (const KklRow& row : rep.rows) {
        // Left side is exactly C(n-d, t) for this family.
        CHECK(row.lhs_t == binom(c, row.t));
        // Near-tightness: (c/t)^t <= C(c,t) <= certified right side.
        Interval lower =
            (Interval::from_long(c) / Interval::from_long(row.t)).pow_si(row.t);
        CHECK(lower.cmp_lo(binom(c, row.t)) <= 0);
      }
    }
  }
}

TEST_CASE("kkl corollary bound: codimension 2 and random subspaces") {
  std::mt19937_64 rng(subrank::sampling::derive_seed(1, "kkl-random"));
  Subspace v = subrank::sampling::random_subspace_codim(rng, 10, 2);
  KklReport rep = kkl_subspace_check(v);
  REQUIRE(rep.rows.size() == 1);  // t range is {1}
  CHECK(rep.rows[0].t == 1);
  CHECK(rep.all_hold);

  for (int trial = 0; trial < 500; ++trial) {
    int n = 6 + static_cast<int>(rng() % 19);  // 6..24
    int c = 2 + static_cast<int>(rng() % std::min(n - 2, 10));
    Subspace s = subrank::sampling::random_subspace_codim(rng, n, c);
    CHECK(kkl_subspace_check(s).all_hold);
  }
  CHECK_THROWS_AS(kkl_subspace_check(axis_subspace(6, 5)), std::invalid_argument);
}

TEST_CASE("fourier pair count: examples and brute force") {
  Subspace full3 = axis_subspace(3, 3);
  CHECK(pair_count_fourier(3, full3) == 9);
  Subspace zero3(3);
  CHECK(pair_count_fourier(3, zero3) == 3);

  std::mt19937_64 rng(subrank::sampling::derive_seed(1, "fourier-pairs"));
  for (long n = 3; n <= 15; n += 2) {
    for (int trial = 0; trial < 100; ++trial) {
      int d = static_cast<int>(rng() % (n + 1));
      Subspace v = subrank::sampling::random_subspace(rng, static_cast<int>(n), d);
      CHECK(pair_count_fourier(n, v) == pair_count_brute(n, (n - 1) / 2, v));
    }
  }
  CHECK_THROWS_AS(pair_count_fourier(4, Subspace(4)), std::invalid_argument);
}

TEST_CASE("f(n,c) enclosures") {
  CertifiedReal far = f_nc(10000, 2);
  CHECK(far.hi_d() < 1.0);
  CertifiedReal at59 = f_nc(59, 2);
  // 16*4/3481 + (2 e ln2 / 59)^(2 ln 2)
  CHECK(at59.lo_d() > 0.0404);
  CHECK(at59.hi_d() < 0.0405);
  CHECK(at59.hi_d() - at59.lo_d() < 1e-12);
  // Monotone increasing in c where the quadratic term dominates (n = 59);
  // at larger n the power term's decay wins between c = 2 and c = 3, e.g.
  // f(101,2) > f(101,3), so the property is pinned to this grid only.
  {
    double prev = f_nc(59, 2).hi_d();
    for (long c = 3; c <= 59 / 12; ++c) {
      CertifiedReal cur = f_nc(59, c);
      CHECK(cur.hi_d() >= prev);
      prev = cur.hi_d();
    }
  }
  CHECK(f_nc(101, 2).lo_d() > f_nc(101, 3).hi_d());
}

TEST_CASE("lemma 1 instances") {
  std::mt19937_64 rng(subrank::sampling::derive_seed(1, "lem1"));
  for (int trial = 0; trial < 20; ++trial) {
    Subspace v = subrank::sampling::random_subspace_codim(rng, 25, 2);
    CHECK(lemma1_instance_check(25, v));
  }
  for (int trial = 0; trial < 100; ++trial) {
    Subspace v = subrank::sampling::random_subspace_codim(rng, 59, 4);
    CHECK(lemma1_instance_check(59, v));
  }
  // The sum is empty when the dual is {0, all-ones}: c = 1, outside the
  // precondition, so compute the left side directly.
  BitVec ones(9);
  for (int i = 0; i < 9; ++i) ones.set(i, true);
  Subspace even = Subspace::span(9, {ones}).orthogonal_complement();
  auto dual_w = subrank::gf2::weight_distribution(even.orthogonal_complement());
  mpq_class lhs = 0;
  for (long t = 1; t <= 8; ++t) lhs += dual_w.counts[t];
  CHECK(lhs == 0);
  CHECK_THROWS_AS(lemma1_instance_check(25, axis_subspace(25, 25 - 1)), std::invalid_argument);
}

TEST_CASE("lemma 2 instances") {
  CHECK(lemma2_instance_check(59, 2));
  CHECK(lemma2_instance_check(59, 4));
  CHECK(lemma2_instance_check(101, 8));
  CHECK_THROWS_AS(lemma2_instance_check(57, 2), std::invalid_argument);
  CHECK_THROWS_AS(lemma2_instance_check(59, 5), std::invalid_argument);
}

TEST_CASE("binomial ratio bounds") {
  // m = 0: equality 1/(n+1) = 2 (1/(2(n+1)))^1.
  for (long n : {6L, 12L, 100L}) {
    mpq_class lhs(binom(n / 2, 0), binom(n + 1, 1));
    mpq_class rhs = 2 * mpq_class(1, 2 * (n + 1));
    CHECK(lhs == rhs);
    CHECK(binomial_ratio_bounds_check(n, 0));
  }
  CHECK(binomial_ratio_bounds_check(12, 4));
  for (long n = 2; n <= 120; n += 2) {
    for (long m = 0; 3 * m <= n + 1; ++m) {
      CHECK(binomial_ratio_bounds_check(n, m));
    }
  }
  CHECK_THROWS_AS(binomial_ratio_bounds_check(12, 7), std::invalid_argument);
}

TEST_CASE("sum-ratio inequality") {
  SumRatioResult r42 = sumratio_check(4, 2);
  CHECK(r42.holds);
  CHECK(r42.lhs == mpq_class(5, 7));
  // The squared left side: (5/7)^2 * pi * 4 against 64.
  double squared = (25.0 / 49.0) * 3.14159265358979 * 4.0;
  CHECK(squared == doctest::Approx(6.4114).epsilon(1e-3));

  for (long k = 4; k <= 120; k += 2) {
    for (long s = 2; s <= k / 2; s += 2) {
      CHECK(sumratio_check(k, s).holds);
    }
  }
  CHECK_THROWS_AS(sumratio_check(8, 6), std::invalid_argument);
}

TEST_CASE("robbins bounds on n!") {
  CHECK(robbins_check(1));
  CHECK(robbins_check(10));
  for (long n = 1; n <= 300; ++n) CHECK(robbins_check(n));
  // The n = 1 enclosure brackets 1 as 0.9959 < 1 < 1.0023.
  Interval root = (Interval::pi() * Interval::from_long(2)).sqrt();
  Interval pw = (Interval::from_long(1) / Interval::euler_e()).pow_si(1);
  Interval lower = root * pw * Interval::from_mpq(mpq_class(1, 13)).exp();
  Interval upper = root * pw * Interval::from_mpq(mpq_class(1, 12)).exp();
  CHECK(lower.hi_d() == doctest::Approx(0.99587).epsilon(1e-4));
  CHECK(upper.lo_d() == doctest::Approx(1.00233).epsilon(1e-4));
}
