#include "subrank/spectral.hpp"

#include <algorithm>
#include <stdexcept>

#include "subrank/binom.hpp"

namespace subrank::spectral {

using num::Interval;
using num::Verdict;

namespace {

int pick_bits(int prec) { return prec > 0 ? prec : num::default_precision_bits(); }

template <class F>
Verdict with_escalation(F&& f, int start_bits, int max_bits = 1024) {
  for (int bits = start_bits; bits <= max_bits; bits *= 2) {
    Verdict v = f(bits);
    if (v != Verdict::kUndecided) return v;
  }
  return Verdict::kUndecided;
}

template <class T>
void butterfly(std::vector<T>& a) {
  const size_t n = a.size();
  for (size_t half = 1; half < n; half <<= 1) {
    for (size_t block = 0; block < n; block += half << 1) {
      for (size_t i = block; i < block + half; ++i) {
        T u = a[i];
        T v = a[i + half];
        a[i] = u + v;
        a[i + half] = u - v;
      }
    }
  }
}

}  // namespace

void walsh_transform(BooleanTable& f) {
  butterfly(f.values);
  const double scale = 1.0 / static_cast<double>(size_t{1} << f.n);
  for (double& x : f.values) x *= scale;
}

void walsh_transform(RationalTable& f) {
  butterfly(f.values);
  mpq_class scale(1, 1);
  scale /= mpz_class(mpz_class(1) << f.n);
  for (mpq_class& x : f.values) {
    x *= scale;
    x.canonicalize();
  }
}

bool convolution_identity_check(const BooleanTable& f, const BooleanTable& g,
                                double relative_tolerance) {
  if (f.n != g.n) throw std::invalid_argument("convolution_identity_check: size mismatch");
  const size_t size = f.values.size();
  double lhs = 0.0;
  for (size_t x = 0; x < size; ++x) {
    if (f.values[x] == 0.0) continue;
    for (size_t y = 0; y < size; ++y) lhs += f.values[x] * f.values[y] * g.values[x ^ y];
  }
  BooleanTable fh = f, gh = g;
  walsh_transform(fh);
  walsh_transform(gh);
  double rhs = 0.0;
  for (size_t z = 0; z < size; ++z) rhs += fh.values[z] * fh.values[z] * gh.values[z];
  rhs *= static_cast<double>(size) * static_cast<double>(size);
  double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return std::abs(lhs - rhs) <= relative_tolerance * scale;
}

bool convolution_identity_check(const RationalTable& f, const RationalTable& g) {
  if (f.n != g.n) throw std::invalid_argument("convolution_identity_check: size mismatch");
  const size_t size = f.values.size();
  mpq_class lhs = 0;
  for (size_t x = 0; x < size; ++x) {
    if (f.values[x] == 0) continue;
    for (size_t y = 0; y < size; ++y) lhs += f.values[x] * f.values[y] * g.values[x ^ y];
  }
  RationalTable fh = f, gh = g;
  walsh_transform(fh);
  walsh_transform(gh);
  mpq_class rhs = 0;
  for (size_t z = 0; z < size; ++z) rhs += fh.values[z] * fh.values[z] * gh.values[z];
  rhs *= mpq_class(mpz_class(1) << (2 * f.n));
  return lhs == rhs;
}

mpz_class krawchouk(long n, long k, long t) { return krawchouk_sum(n, k, t); }

mpz_class middle_krawchouk_closed(long n, long t) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("middle_krawchouk_closed: n must be odd");
  if (t < 0 || t > n) throw std::invalid_argument("middle_krawchouk_closed: t out of range");
  mpz_class numerator = binom(n, (n - 1) / 2) * binom((n - 1) / 2, t / 2);
  mpz_class q, rem;
  mpz_class d = binom(n, t);
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), numerator.get_mpz_t(), d.get_mpz_t());
  if (rem != 0) throw std::logic_error("middle_krawchouk_closed: non-exact division");
  if ((t / 2) % 2 == 1) q = -q;
  return q;
}

SparseSpectrum subspace_indicator_hat(const gf2::Subspace& v, uint64_t enumeration_limit) {
  gf2::Subspace dual = v.orthogonal_complement();
  if (dual.dim() >= 64 || (uint64_t{1} << dual.dim()) > enumeration_limit) {
    throw std::invalid_argument("subspace_indicator_hat: dual exceeds enumeration limit");
  }
  SparseSpectrum s;
  s.n = v.ambient();
  s.value = mpq_class(1);
  s.value /= mpq_class(dual.size());
  dual.for_each_element([&](const BitVec& z) { s.support.push_back(z); });
  std::sort(s.support.begin(), s.support.end());
  return s;
}

KklReport kkl_subspace_check(const gf2::Subspace& v, int prec) {
  const long n = v.ambient();
  const long c = n - v.dim();
  if (c < 2) throw std::invalid_argument("kkl_subspace_check: codimension must be >= 2");
  KklReport report;
  report.c = c;
  gf2::WeightDistribution dual_w = gf2::weight_distribution(v.orthogonal_complement());
  const int bits = pick_bits(prec);
  // t_max = floor(ln2 * c); ln2*c is irrational, the enclosure settles it.
  long t_max = 0;
  {
    Interval bound = Interval::ln2(bits) * Interval::from_long(c, bits);
    for (long t = 1; t <= c; ++t) {
      Verdict in_range = Interval::compare_le(Interval::from_long(t, bits), bound);
      if (in_range == Verdict::kTrue) {
        t_max = t;
      } else {
        break;
      }
    }
  }
  report.all_hold = true;
  for (long t = 1; t <= t_max; ++t) {
    KklRow row;
    row.t = t;
    row.lhs_t = dual_w.counts[t];
    row.lhs_nt = dual_w.counts[n - t];
    mpz_class lhs = std::max(row.lhs_t, row.lhs_nt);
    Verdict verdict = with_escalation(
        [&](int b) {
          Interval rhs = (Interval::from_long(2, b) * Interval::euler_e(b) * Interval::ln2(b) *
                          Interval::from_long(c, b) / Interval::from_long(t, b))
                             .pow_si(t);
          row.rhs = rhs;
          return Interval::compare_le(Interval::from_mpz(lhs, b), rhs);
        },
        bits);
    row.holds = verdict == Verdict::kTrue;
    if (!row.holds) report.all_hold = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

mpz_class pair_count_fourier(long n, const gf2::Subspace& v, uint64_t enumeration_limit) {
  if (n % 2 == 0) throw std::invalid_argument("pair_count_fourier: n must be odd");
  if (v.ambient() != n) throw std::invalid_argument("pair_count_fourier: ambient mismatch");
  gf2::Subspace dual = v.orthogonal_complement();
  if (dual.dim() >= 64 || (uint64_t{1} << dual.dim()) > enumeration_limit) {
    throw std::invalid_argument("pair_count_fourier: dual exceeds enumeration limit");
  }
  gf2::WeightDistribution dual_w = gf2::weight_distribution(dual, enumeration_limit);
  mpz_class acc = 0;
  for (long t = 0; t <= n; ++t) {
    if (dual_w.counts[t] == 0) continue;
    mpz_class kv = krawchouk_sum(n, (n - 1) / 2, t);
    acc += kv * kv * dual_w.counts[t];
  }
  acc *= v.size();
  mpz_class q, rem;
  mpz_class den = pow2_z(static_cast<unsigned long>(n));
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), acc.get_mpz_t(), den.get_mpz_t());
  if (rem != 0) throw std::logic_error("pair_count_fourier: non-integer total");
  return q;
}

mpz_class pair_count_brute(long n, long w, const gf2::Subspace& v) {
  if (n > 62) throw std::invalid_argument("pair_count_brute: n too large");
  if (v.ambient() != n) throw std::invalid_argument("pair_count_brute: ambient mismatch");
  // Pairs (x, x+u) for u in V; iterate weight-w x by Gosper's hack.
  std::vector<uint64_t> members;
  v.for_each_element([&](const BitVec& u) { members.push_back(u.low_word()); });
  mpz_class count = 0;
  if (w < 0 || w > n) return count;
  if (w == 0) {
    for (uint64_t u : members) {
      if (std::popcount(u) == 0) ++count;
    }
    return count;
  }
  uint64_t x = (uint64_t{1} << w) - 1;
  const uint64_t limit = uint64_t{1} << n;
  while (x < limit) {
    for (uint64_t u : members) {
      if (std::popcount(x ^ u) == static_cast<int>(w)) ++count;
    }
    uint64_t c = x & -x, r = x + c;
    x = (((r ^ x) >> 2) / c) | r;
  }
  return count;
}

CertifiedReal f_nc(long n, long c, int prec) {
  if (n < 1 || c < 2) throw std::invalid_argument("f_nc: need n >= 1, c >= 2");
  const int bits = pick_bits(prec);
  Interval first = Interval::from_mpq(mpq_class(16 * c * c, n * n), bits);
  Interval base = Interval::euler_e(bits) * Interval::ln2(bits) * Interval::from_long(c, bits) /
                  Interval::from_long(n, bits);
  Interval exponent = Interval::ln2(bits) * Interval::from_long(c, bits);
  return first + base.pow(exponent);
}

Lemma1Result lemma1_instance_detail(long n, const gf2::Subspace& v, int prec) {
  if (n % 2 == 0) throw std::invalid_argument("lemma1_instance_check: n must be odd");
  const long c = n - v.dim();
  if (c < 2 || 12 * c > n) throw std::invalid_argument("lemma1_instance_check: need 2 <= c <= n/12");
  gf2::WeightDistribution dual_w = gf2::weight_distribution(v.orthogonal_complement());
  Lemma1Result res;
  res.lhs = 0;
  for (long t = 1; t <= n - 1; ++t) {
    if (dual_w.counts[t] == 0) continue;
    mpq_class term(binom((n - 1) / 2, t / 2), binom(n, t));
    term.canonicalize();
    res.lhs += term * term * dual_w.counts[t];
  }
  Verdict verdict = with_escalation(
      [&](int b) {
        res.rhs = f_nc(n, c, b);
        return Interval::compare_le(Interval::from_mpq(res.lhs, b), res.rhs);
      },
      pick_bits(prec));
  res.holds = verdict == Verdict::kTrue;
  return res;
}

bool lemma1_instance_check(long n, const gf2::Subspace& v, int prec) {
  return lemma1_instance_detail(n, v, prec).holds;
}

bool lemma2_instance_check(long n, long c, int prec) {
  if (n < 59 || n % 2 == 0) throw std::invalid_argument("lemma2_instance_check: odd n >= 59");
  if (c < 2 || 12 * c > n) throw std::invalid_argument("lemma2_instance_check: need 2 <= c <= n/12");
  const mpz_class central = binom(n, (n - 1) / 2);
  Verdict verdict = with_escalation(
      [&](int b) {
        Interval lhs = Interval::from_long(2, b) + f_nc(n, c, b);
        Interval rhs = Interval::from_long(2, b).pow_si(c) *
                       Interval::from_mpz(central, b).pow(
                           Interval::from_mpq(mpq_class(1 - c, n - 1), b));
        return Interval::compare_le(lhs, rhs);
      },
      pick_bits(prec));
  if (verdict != Verdict::kUndecided) return verdict == Verdict::kTrue;
  // Exact fallback: round the enclosure of 2+f up to a rational fbar and
  // compare fbar^(n-1) C^(c-1) <= 2^(c(n-1)) exactly.
  Interval lhs = Interval::from_long(2, 1024) + f_nc(n, c, 1024);
  mpq_class fbar = lhs.hi_rat();
  mpz_class num = pow_z(mpz_class(fbar.get_num()), static_cast<unsigned long>(n - 1));
  mpz_class den = pow_z(mpz_class(fbar.get_den()), static_cast<unsigned long>(n - 1));
  mpz_class left = num * pow_z(central, static_cast<unsigned long>(c - 1));
  mpz_class right = den * pow2_z(static_cast<unsigned long>(c * (n - 1)));
  return left <= right;
}

bool binomial_ratio_bounds_check(long n, long m) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("binomial_ratio_bounds_check: n even >= 2");
  const bool first_applies = m >= 0 && 3 * m <= n;
  const bool second_applies = m >= 1 && 3 * m <= n + 1;
  if (!first_applies && !second_applies) {
    throw std::invalid_argument("binomial_ratio_bounds_check: m outside both ranges");
  }
  bool ok = true;
  if (first_applies) {
    mpq_class lhs(binom(n / 2, m), binom(n + 1, 2 * m + 1));
    lhs.canonicalize();
    mpq_class base(2 * m + 1, 2 * (n - m + 1));
    base.canonicalize();
    mpq_class rhs = 2;
    for (long i = 0; i < m + 1; ++i) rhs *= base;
    ok = ok && lhs <= rhs;
  }
  if (second_applies) {
    mpq_class lhs(binom(n / 2, m), binom(n + 1, 2 * m));
    lhs.canonicalize();
    mpq_class base(m, n - m + 1);
    base.canonicalize();
    mpq_class rhs = 1;
    for (long i = 0; i < m; ++i) rhs *= base;
    ok = ok && lhs <= rhs;
  }
  return ok;
}

SumRatioResult sumratio_check(long k, long s, int prec) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("sumratio_check: k even >= 4");
  if (s < 2 || s % 2 != 0 || s > k / 2) {
    throw std::invalid_argument("sumratio_check: s even in [2, k/2]");
  }
  mpz_class numerator = 0, denominator = 0;
  for (long m = 0; m <= s; m += 2) {
    mpz_class half = binom(k / 2, m / 2);
    numerator += half * half;
    denominator += binom(k, m);
  }
  SumRatioResult res;
  res.lhs = mpq_class(numerator, denominator);
  res.lhs.canonicalize();
  mpq_class squared = res.lhs * res.lhs * mpq_class(s * (k - s));
  auto against = [&](long rhs_factor) {
    return with_escalation(
        [&](int b) {
          Interval left = Interval::from_mpq(squared, b) * Interval::pi(b);
          return Interval::compare_le(left, Interval::from_long(rhs_factor * k, b));
        },
        pick_bits(prec));
  };
  res.holds = against(16) == Verdict::kTrue;
  res.sharp_constant = against(2);
  return res;
}

bool robbins_check(long n, int prec) {
  if (n < 1) throw std::invalid_argument("robbins_check: n >= 1");
  const mpz_class nf = factorial(n);
  const int bits = std::max(pick_bits(prec), 256);
  Interval root = (Interval::pi(bits) * Interval::from_long(2 * n, bits)).sqrt();
  Interval power =
      (Interval::from_long(n, bits) / Interval::euler_e(bits)).pow_si(n);
  Interval lower = root * power * Interval::from_mpq(mpq_class(1, 12 * n + 1), bits).exp();
  Interval upper = root * power * Interval::from_mpq(mpq_class(1, 12 * n), bits).exp();
  // lower < n! < upper, decisively.
  return lower.cmp_hi(nf) < 0 && upper.cmp_lo(nf) > 0;
}

}  // namespace subrank::spectral
