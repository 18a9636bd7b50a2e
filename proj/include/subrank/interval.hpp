#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace subrank::num {

enum class Verdict { kTrue, kFalse, kUndecided };

// Working mantissa bits; SUBRANK_PRECISION_BITS overrides the default of 192.
int default_precision_bits();

// Enclosure [lo, hi] with directed rounding. Every operation rounds lo down
// and hi up, so the true value of any composed expression stays inside.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = default_precision_bits());
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  static Interval from_long(long v, mpfr_prec_t prec = default_precision_bits());
  static Interval from_mpz(const mpz_class& v, mpfr_prec_t prec = default_precision_bits());
  static Interval from_mpq(const mpq_class& v, mpfr_prec_t prec = default_precision_bits());
  static Interval from_double(double v, mpfr_prec_t prec = default_precision_bits());
  static Interval pi(mpfr_prec_t prec = default_precision_bits());
  static Interval euler_e(mpfr_prec_t prec = default_precision_bits());
  static Interval ln2(mpfr_prec_t prec = default_precision_bits());

  mpfr_prec_t precision() const { return prec_; }
  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  // Exact endpoints as dyadic rationals.
  mpq_class lo_rat() const;
  mpq_class hi_rat() const;
  std::string str(int digits = 20) const;

  bool contains_zero() const;
  bool is_positive() const;  // lo > 0

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);  // 0 not in b
  Interval neg() const;

  Interval sqrt() const;  // lo >= 0
  Interval ln() const;    // lo > 0
  Interval log2() const;  // lo > 0
  Interval exp() const;
  Interval exp2() const;
  // base^e for base with lo > 0, arbitrary real exponent enclosure.
  Interval pow(const Interval& exponent) const;
  Interval pow_si(long exponent) const;  // lo > 0 unless exponent >= 0 and lo >= 0

  // Exact comparisons of endpoints against integers (no rounding involved).
  int cmp_hi(const mpz_class& v) const;
  int cmp_lo(const mpz_class& v) const;

  // True/False only when the enclosures are disjoint.
  static Verdict compare_le(const Interval& a, const Interval& b);
  static Verdict compare_lt(const Interval& a, const Interval& b);

 private:
  friend class IntervalOps;
  mpfr_prec_t prec_;
  mpfr_t lo_, hi_;
};

}  // namespace subrank::num
