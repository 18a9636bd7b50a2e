#pragma once

#include <gmpxx.h>

#include <stdexcept>

namespace subrank {

// C(n, m); 0 outside 0 <= m <= n.
inline mpz_class binom(long n, long m) {
  if (m < 0 || n < 0 || m > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(m));
  return r;
}

inline mpz_class factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

inline mpz_class pow_z(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline mpz_class pow2_z(unsigned long e) {
  mpz_class r = 1;
  r <<= e;
  return r;
}

// K_k^n(t) = sum_j (-1)^j C(t,j) C(n-t,k-j), exact.
inline mpz_class krawchouk_sum(long n, long k, long t) {
  if (n < 0 || k < 0 || k > n || t < 0 || t > n) {
    throw std::invalid_argument("krawchouk: indices out of range");
  }
  mpz_class acc = 0;
  for (long j = 0; j <= k && j <= t; ++j) {
    mpz_class term = binom(t, j) * binom(n - t, k - j);
    if (j & 1) {
      acc -= term;
    } else {
      acc += term;
    }
  }
  return acc;
}

}  // namespace subrank
