#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "subrank/interval.hpp"

namespace subrank::bounds {

using LogBound = num::Interval;

mpz_class binomial(long n, long m);  // 0 when m is out of range

// f(k,m) = C(m,m/2) C(k-m-1,(k-m)/2) for even 0 <= m <= k-2, else 0.
mpz_class f_km(long k, long m);

// Symmetry, strict monotonicity on [0,k/2], the closed form at m=0, and the
// interleaved ordering, all checked exactly over every even m.
bool check_f_properties(long k);

// sum_{m even, 0..s-2} C(k,m) f(k,m) + 2^r f(k,s); s even, 2 <= s <= k/2.
mpz_class ukrs_lhs(long k, long r, long s);

// Upper bound on |R| over every even-weight subspace of dimension r:
// maximize sum a_m f(k,m) with a_0 = 1, a_m <= C(k-1,m), sum a_m = 2^r,
// filling weights in decreasing f(k,m) order.
mpz_class greedy_weight_bound(long k, long r);

enum class Method { kRZero, kTrivialTop, kGreedyWeights, kSScan, kExactEnumeration };
enum class Decision { kInterval, kExactBigint };

const char* method_name(Method m);
const char* decision_name(Decision d);

struct RankCertificate {
  long k = 0;
  long r = 0;
  Method method = Method::kRZero;
  Decision decision = Decision::kExactBigint;
  bool verified = false;
  std::optional<long> s;                        // chosen s for the s-scan
  std::optional<std::string> witness_subspace;  // extremal subspace, text format
  std::optional<bool> s_scan_sufficient;        // probe: would the s-scan alone decide?
  double elapsed_ms = 0.0;
};

struct VerifyPolicy {
  int interval_bits = 0;  // 0: use default_precision_bits()
  int max_interval_bits = 1024;
  bool exact_fallback = true;
  bool enable_greedy = true;
  bool enable_s_scan = true;
  bool allow_exact_enumeration = true;  // only attempted for k <= 10
  bool probe_s_scan = false;
};

// Certifies |R| <= C(k-1,k/2)^(r/(k-2)+1) for every even-weight subspace of
// dimension r, as the integer comparison U^(k-2) <= B^(r+k-2). Tries the
// method menu cheapest-first and returns the first success; verified=false
// means the menu is exhausted (inconclusive), not a counterexample.
RankCertificate verify_rank_inequality(long k, long r, const VerifyPolicy& policy = {});

struct ScanOptions {
  long k_max = 4;
  int jobs = 1;
  std::string cache_path;  // JSON-lines, append-only; empty disables caching
  VerifyPolicy policy;
};

struct ScanReport {
  long k_min = 4;
  long k_max = 4;
  std::vector<RankCertificate> certificates;  // sorted by (k, r)
  std::vector<std::pair<long, long>> failures;
  uint64_t interval_decisions = 0;
  uint64_t exact_decisions = 0;
  uint64_t cache_hits = 0;
  double elapsed_s = 0.0;
};

// Runs verify_rank_inequality over every even k in [4, k_max] and every
// r in [0, k-2]. Deterministic output regardless of jobs; resumable.
ScanReport scan_conjecture(const ScanOptions& options);

struct MainBoundCertificate {
  long k = 0;
  bool certified = false;
  std::vector<long> failed_r;
};

// All r in [0, k-2] verified: certifies log2 of the asymptotic induced
// matching number of the middle type graph is >= 1, hence = 2 with the
// trivial upper bound. k = 2 is certified trivially (the graph is a matching).
MainBoundCertificate certify_main_bound(long k, const VerifyPolicy& policy = {});

LogBound log2_interval(const mpz_class& x, int prec = 0);

// The small-r claim threshold: the admissible-r bound evaluated with
// certified arithmetic is at least k / (2 log2 k). k even, >= 28.
bool small_r_threshold_check(long k, int prec = 0);

struct BinomialPowerFloorResult {
  num::Interval floor_value;  // 2^r (pi(k+1)/2)^(-r/(2(k-2)))
  bool holds = false;         // full chain up to C(k-1,k/2-1)^(r/(k-2))
};

BinomialPowerFloorResult binomial_power_floor(long k, long r, int prec = 0);

}  // namespace subrank::bounds
