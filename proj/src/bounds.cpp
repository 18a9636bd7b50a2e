#include "subrank/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "subrank/binom.hpp"
#include "subrank/gf2.hpp"

namespace subrank::bounds {

using json = nlohmann::json;
using num::Interval;
using num::Verdict;

mpz_class binomial(long n, long m) { return binom(n, m); }

mpz_class f_km(long k, long m) {
  if (k <= 0 || k % 2 != 0) throw std::invalid_argument("f_km: k must be even and positive");
  if (m % 2 != 0 || m < 0 || m > k - 2) return 0;
  return binom(m, m / 2) * binom(k - m - 1, (k - m) / 2);
}

bool check_f_properties(long k) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("check_f_properties: k must be even >= 4");
  // (3) f(k,0) = C(k-1,k/2-1) = C(k-1,k/2)
  if (f_km(k, 0) != binom(k - 1, k / 2 - 1)) return false;
  if (f_km(k, 0) != binom(k - 1, k / 2)) return false;
  // (1) symmetry for even 0 < m < k
  for (long m = 2; m < k; m += 2) {
    if (f_km(k, m) != f_km(k, k - m)) return false;
  }
  // (2) strict decrease for even 0 <= m <= k/2
  for (long m = 0; m + 2 <= k / 2; m += 2) {
    if (!(f_km(k, m) > f_km(k, m + 2))) return false;
  }
  // (4) interleaved chain f(k,0) >= f(k,k-2) = f(k,2) >= f(k,k-4) = f(k,4) >= ...
  mpz_class prev = f_km(k, 0);
  for (long m = 2; m <= k / 2; m += 2) {
    if (f_km(k, k - m) != f_km(k, m)) return false;
    if (!(prev >= f_km(k, m))) return false;
    prev = f_km(k, m);
  }
  return true;
}

mpz_class ukrs_lhs(long k, long r, long s) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("ukrs_lhs: k must be even >= 4");
  if (s % 2 != 0 || s < 2 || s > k / 2) throw std::invalid_argument("ukrs_lhs: s even in [2, k/2]");
  if (r < 0) throw std::invalid_argument("ukrs_lhs: r must be nonnegative");
  mpz_class acc = 0;
  for (long m = 0; m <= s - 2; m += 2) acc += binom(k, m) * f_km(k, m);
  acc += pow2_z(static_cast<unsigned long>(r)) * f_km(k, s);
  return acc;
}

namespace {

// Per-k data shared across the r loop of a scan.
struct KTable {
  long k = 0;
  mpz_class B;  // C(k-1, k/2)
  mpz_class f0;
  // Fill order: even weights sorted by decreasing f(k,m), i.e. by
  // min(m, k-m) increasing, lower m first on ties.
  std::vector<long> fill_m;
  std::vector<mpz_class> fill_f;
  std::vector<mpz_class> cum_count;  // prefix sums of C(k-1,m)
  std::vector<mpz_class> cum_sum;    // prefix sums of C(k-1,m) f(k,m)

  explicit KTable(long k_in) : k(k_in) {
    B = binom(k - 1, k / 2);
    f0 = f_km(k, 0);
    for (long m = 2; m <= k - 2; m += 2) fill_m.push_back(m);
    std::sort(fill_m.begin(), fill_m.end(), [this](long a, long b) {
      long da = std::min(a, k - a), db = std::min(b, k - b);
      return da != db ? da < db : a < b;
    });
    mpz_class cc = 0, cs = 0;
    for (long m : fill_m) {
      mpz_class f = f_km(k, m);
      mpz_class cap = binom(k - 1, m);
      cc += cap;
      cs += cap * f;
      fill_f.push_back(f);
      cum_count.push_back(cc);
      cum_sum.push_back(cs);
    }
  }

  mpz_class greedy(long r) const {
    mpz_class rem = pow2_z(static_cast<unsigned long>(r)) - 1;
    if (rem == 0) return f0;
    if (rem > cum_count.back()) {
      throw std::invalid_argument("greedy_weight_bound: 2^r exceeds the even-weight space");
    }
    // First index where the cumulative capacity covers rem.
    size_t i = std::lower_bound(cum_count.begin(), cum_count.end(), rem) - cum_count.begin();
    mpz_class before_cnt = (i == 0) ? mpz_class(0) : cum_count[i - 1];
    mpz_class before_sum = (i == 0) ? mpz_class(0) : cum_sum[i - 1];
    return f0 + before_sum + (rem - before_cnt) * fill_f[i];
  }
};

struct CompareOutcome {
  Verdict verdict = Verdict::kUndecided;
  Decision decision = Decision::kInterval;
};

int effective_bits(const VerifyPolicy& p) {
  return p.interval_bits > 0 ? p.interval_bits : num::default_precision_bits();
}

// Decides U^eu <= B^eb. Interval log2 comparison first, escalating precision,
// then exact big-integer powers when allowed.
CompareOutcome compare_exactified(const mpz_class& U, long eu, const mpz_class& B, long eb,
                                  const VerifyPolicy& policy) {
  CompareOutcome out;
  for (int bits = effective_bits(policy); bits <= policy.max_interval_bits; bits *= 2) {
    Interval lu = Interval::from_long(eu, bits) * Interval::from_mpz(U, bits).log2();
    Interval lb = Interval::from_long(eb, bits) * Interval::from_mpz(B, bits).log2();
    Verdict v = Interval::compare_le(lu, lb);
    if (v != Verdict::kUndecided) {
      out.verdict = v;
      out.decision = Decision::kInterval;
      return out;
    }
  }
  if (!policy.exact_fallback) return out;
  mpz_class pu = pow_z(U, static_cast<unsigned long>(eu));
  mpz_class pb = pow_z(B, static_cast<unsigned long>(eb));
  out.verdict = (pu <= pb) ? Verdict::kTrue : Verdict::kFalse;
  out.decision = Decision::kExactBigint;
  return out;
}

// Even-weight subspaces of F_2^(k-1) have a basis inside the span of
// e_i + e_(i+1); enumerate dimension-r subspaces there via RREF matrices.
template <class F>
void for_each_even_weight_subspace(long k, long r, F&& fn) {
  const int d = static_cast<int>(k - 2);  // dim of the even-weight space
  const int n = static_cast<int>(k - 1);
  std::vector<BitVec> ebasis;
  for (int i = 0; i < d; ++i) {
    BitVec v(n);
    v.set(i, true);
    v.set(i + 1, true);
    ebasis.push_back(v);
  }
  if (r == 0) {
    fn(gf2::Subspace(n));
    return;
  }
  // Pivot column combinations p_0 < ... < p_(r-1) in [0, d).
  std::vector<int> piv(r);
  for (long i = 0; i < r; ++i) piv[i] = static_cast<int>(i);
  auto emit = [&](const std::vector<uint32_t>& rows) {
    std::vector<BitVec> basis;
    for (long i = 0; i < r; ++i) {
      BitVec v(n);
      for (int j = 0; j < d; ++j) {
        if ((rows[i] >> j) & 1) v ^= ebasis[j];
      }
      basis.push_back(std::move(v));
    }
    fn(gf2::Subspace::span(n, basis));
  };
  while (true) {
    // Free positions: row i, columns j > piv[i] with j not a pivot.
    std::vector<std::pair<int, int>> free_pos;
    std::vector<char> is_piv(d, 0);
    for (int p : piv) is_piv[p] = 1;
    for (long i = 0; i < r; ++i) {
      for (int j = piv[i] + 1; j < d; ++j) {
        if (!is_piv[j]) free_pos.emplace_back(static_cast<int>(i), j);
      }
    }
    std::vector<uint32_t> rows(r, 0);
    for (long i = 0; i < r; ++i) rows[i] = uint32_t{1} << piv[i];
    uint64_t total = uint64_t{1} << free_pos.size();
    for (uint64_t mask = 0; mask < total; ++mask) {
      for (long i = 0; i < r; ++i) rows[i] = uint32_t{1} << piv[i];
      for (size_t b = 0; b < free_pos.size(); ++b) {
        if ((mask >> b) & 1) rows[free_pos[b].first] |= uint32_t{1} << free_pos[b].second;
      }
      emit(rows);
    }
    // Next pivot combination.
    long i = r - 1;
    while (i >= 0 && piv[i] == d - (r - i)) --i;
    if (i < 0) break;
    ++piv[i];
    for (long j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
  }
}

std::string subspace_to_text(const gf2::Subspace& v) {
  std::ostringstream os;
  os << v.ambient() << " " << v.dim();
  for (const BitVec& b : v.basis()) os << "\n" << b.to_string();
  return os.str();
}

RankCertificate verify_with_table(const KTable& table, long r, const VerifyPolicy& policy) {
  auto t0 = std::chrono::steady_clock::now();
  const long k = table.k;
  RankCertificate cert;
  cert.k = k;
  cert.r = r;

  auto finish = [&](RankCertificate c) {
    c.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return c;
  };

  if (policy.probe_s_scan) {
    bool found = false;
    for (long s = 2; s <= k / 2 && !found; s += 2) {
      CompareOutcome o = compare_exactified(ukrs_lhs(k, r, s), k - 2, table.B, r + k - 2, policy);
      found = o.verdict == Verdict::kTrue;
    }
    cert.s_scan_sufficient = found;
  }

  // (a) r = 0: |R| = f(k,0) = B and the exactified comparison is an equality.
  if (r == 0) {
    cert.method = Method::kRZero;
    cert.decision = Decision::kExactBigint;
    cert.verified = pow_z(table.f0, k - 2) == pow_z(table.B, k - 2);
    return finish(cert);
  }
  // (b) r = k-2: |R| <= B^2 with exponent r/(k-2)+1 = 2, an equality.
  if (r == k - 2) {
    cert.method = Method::kTrivialTop;
    cert.decision = Decision::kExactBigint;
    cert.verified = pow_z(table.B * table.B, k - 2) == pow_z(table.B, r + k - 2);
    return finish(cert);
  }
  // (c) greedy weight filling.
  if (policy.enable_greedy) {
    CompareOutcome o = compare_exactified(table.greedy(r), k - 2, table.B, r + k - 2, policy);
    if (o.verdict == Verdict::kTrue) {
      cert.method = Method::kGreedyWeights;
      cert.decision = o.decision;
      cert.verified = true;
      return finish(cert);
    }
  }
  // (d) scan over even s.
  for (long s = 2; policy.enable_s_scan && s <= k / 2; s += 2) {
    CompareOutcome o = compare_exactified(ukrs_lhs(k, r, s), k - 2, table.B, r + k - 2, policy);
    if (o.verdict == Verdict::kTrue) {
      cert.method = Method::kSScan;
      cert.decision = o.decision;
      cert.verified = true;
      cert.s = s;
      return finish(cert);
    }
  }
  // (e) exhaustive subspace enumeration at desk scale.
  if (policy.allow_exact_enumeration && k <= 10) {
    mpz_class worst = 0;
    gf2::Subspace worst_v(static_cast<int>(k - 1));
    for_each_even_weight_subspace(k, r, [&](const gf2::Subspace& v) {
      mpz_class c = gf2::restricted_pair_count(k, v);
      if (c > worst) {
        worst = c;
        worst_v = v;
      }
    });
    cert.method = Method::kExactEnumeration;
    cert.decision = Decision::kExactBigint;
    cert.verified = pow_z(worst, k - 2) <= pow_z(table.B, r + k - 2);
    cert.witness_subspace = subspace_to_text(worst_v);
    return finish(cert);
  }
  cert.verified = false;
  return finish(cert);
}

uint64_t policy_methods_hash(const VerifyPolicy& p) {
  // FNV-1a over the method menu and the policy knobs that affect verdicts.
  std::string s = "menu:v1;rzero,trivialtop,greedy,sscan,exactenum;";
  s += "exact=" + std::to_string(p.exact_fallback);
  s += ";greedy=" + std::to_string(p.enable_greedy);
  s += ";sscan=" + std::to_string(p.enable_s_scan);
  s += ";enum=" + std::to_string(p.allow_exact_enumeration);
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

json certificate_to_json(const RankCertificate& c) {
  json j{{"k", c.k},
         {"r", c.r},
         {"method", method_name(c.method)},
         {"decision", decision_name(c.decision)},
         {"verified", c.verified},
         {"elapsed_ms", c.elapsed_ms}};
  if (c.s) j["s"] = *c.s;
  if (c.witness_subspace) j["witness_subspace"] = *c.witness_subspace;
  if (c.s_scan_sufficient) j["s_scan_sufficient"] = *c.s_scan_sufficient;
  return j;
}

Method method_from_name(const std::string& name) {
  if (name == "r-zero") return Method::kRZero;
  if (name == "trivial-top") return Method::kTrivialTop;
  if (name == "greedy-weights") return Method::kGreedyWeights;
  if (name == "s-scan") return Method::kSScan;
  if (name == "exact-enumeration") return Method::kExactEnumeration;
  throw std::invalid_argument("unknown method name: " + name);
}

RankCertificate certificate_from_json(const json& j) {
  RankCertificate c;
  c.k = j.at("k").get<long>();
  c.r = j.at("r").get<long>();
  c.method = method_from_name(j.at("method").get<std::string>());
  c.decision = j.at("decision").get<std::string>() == "exact-bigint" ? Decision::kExactBigint
                                                                     : Decision::kInterval;
  c.verified = j.at("verified").get<bool>();
  c.elapsed_ms = j.value("elapsed_ms", 0.0);
  if (j.contains("s")) c.s = j["s"].get<long>();
  if (j.contains("witness_subspace")) c.witness_subspace = j["witness_subspace"].get<std::string>();
  if (j.contains("s_scan_sufficient")) c.s_scan_sufficient = j["s_scan_sufficient"].get<bool>();
  return c;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::kRZero: return "r-zero";
    case Method::kTrivialTop: return "trivial-top";
    case Method::kGreedyWeights: return "greedy-weights";
    case Method::kSScan: return "s-scan";
    case Method::kExactEnumeration: return "exact-enumeration";
  }
  return "?";
}

const char* decision_name(Decision d) {
  return d == Decision::kInterval ? "interval" : "exact-bigint";
}

mpz_class greedy_weight_bound(long k, long r) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("greedy_weight_bound: k even >= 4");
  if (r < 0 || r > k - 2) throw std::invalid_argument("greedy_weight_bound: r in [0, k-2]");
  return KTable(k).greedy(r);
}

RankCertificate verify_rank_inequality(long k, long r, const VerifyPolicy& policy) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("verify_rank_inequality: k even >= 4");
  if (r < 0 || r > k - 2) throw std::invalid_argument("verify_rank_inequality: r in [0, k-2]");
  return verify_with_table(KTable(k), r, policy);
}

ScanReport scan_conjecture(const ScanOptions& options) {
  if (options.k_max < 4 || options.k_max % 2 != 0) {
    throw std::invalid_argument("scan_conjecture: k_max even >= 4");
  }
  auto t0 = std::chrono::steady_clock::now();
  ScanReport report;
  report.k_min = 4;
  report.k_max = options.k_max;

  const uint64_t menu_hash = policy_methods_hash(options.policy);
  std::map<std::pair<long, long>, RankCertificate> cached;
  if (!options.cache_path.empty()) {
    std::ifstream in(options.cache_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("methods_hash")) continue;
      if (j["methods_hash"].get<uint64_t>() != menu_hash) continue;
      RankCertificate c = certificate_from_json(j);
      cached.emplace(std::make_pair(c.k, c.r), std::move(c));
    }
  }

  std::vector<long> ks;
  for (long k = 4; k <= options.k_max; k += 2) ks.push_back(k);

  std::map<long, std::vector<RankCertificate>> rows;
  std::mutex merge_mutex;
  std::ofstream cache_out;
  if (!options.cache_path.empty()) {
    cache_out.open(options.cache_path, std::ios::app);
  }
  std::atomic<size_t> next{0};
  uint64_t hits = 0;

  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= ks.size()) return;
      long k = ks[i];
      std::vector<RankCertificate> local;
      std::vector<RankCertificate> fresh;
      uint64_t local_hits = 0;
      KTable table(k);
      for (long r = 0; r <= k - 2; ++r) {
        auto it = cached.find({k, r});
        if (it != cached.end()) {
          local.push_back(it->second);
          ++local_hits;
          continue;
        }
        RankCertificate c = verify_with_table(table, r, options.policy);
        local.push_back(c);
        fresh.push_back(std::move(c));
      }
      std::lock_guard<std::mutex> lock(merge_mutex);
      hits += local_hits;
      if (cache_out.is_open()) {
        for (const RankCertificate& c : fresh) {
          json j = certificate_to_json(c);
          j["methods_hash"] = menu_hash;
          cache_out << j.dump() << "\n";
        }
        cache_out.flush();
      }
      rows.emplace(k, std::move(local));
    }
  };

  int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (auto& [k, certs] : rows) {
    for (RankCertificate& c : certs) {
      if (!c.verified) report.failures.emplace_back(c.k, c.r);
      if (c.decision == Decision::kInterval) {
        ++report.interval_decisions;
      } else {
        ++report.exact_decisions;
      }
      report.certificates.push_back(std::move(c));
    }
  }
  report.cache_hits = hits;
  report.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

MainBoundCertificate certify_main_bound(long k, const VerifyPolicy& policy) {
  MainBoundCertificate out;
  out.k = k;
  if (k == 2) {
    out.certified = true;  // the 2-graph is itself a matching
    return out;
  }
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("certify_main_bound: k even >= 2");
  KTable table(k);
  out.certified = true;
  for (long r = 0; r <= k - 2; ++r) {
    RankCertificate c = verify_with_table(table, r, policy);
    if (!c.verified) {
      out.certified = false;
      out.failed_r.push_back(r);
    }
  }
  return out;
}

LogBound log2_interval(const mpz_class& x, int prec) {
  if (x <= 0) throw std::invalid_argument("log2_interval: x must be positive");
  int bits = prec > 0 ? prec : num::default_precision_bits();
  return Interval::from_mpz(x, bits).log2();
}

bool small_r_threshold_check(long k, int prec) {
  if (k < 28 || k % 2 != 0) throw std::invalid_argument("small_r_threshold_check: k even >= 28");
  int bits = prec > 0 ? prec : num::default_precision_bits();
  // rhs = 2(k-2) log( 1 / (1/4 + k/(2(k-1))) ) / log( pi/2 (k+1) )
  Interval ratio = Interval::from_mpq(mpq_class(1, 4) + mpq_class(k, 2 * (k - 1)), bits);
  Interval numerator = (Interval::from_long(1, bits) / ratio).log2();
  Interval denominator =
      (Interval::pi(bits) * Interval::from_mpq(mpq_class(k + 1, 2), bits)).log2();
  Interval rhs = Interval::from_long(2 * (k - 2), bits) * numerator / denominator;
  // threshold = k / (2 log2 k)
  Interval threshold = Interval::from_long(k, bits) /
                       (Interval::from_long(2, bits) * Interval::from_long(k, bits).log2());
  return Interval::compare_le(threshold, rhs) == Verdict::kTrue;
}

BinomialPowerFloorResult binomial_power_floor(long k, long r, int prec) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("binomial_power_floor: k even >= 4");
  if (r < 0) throw std::invalid_argument("binomial_power_floor: r >= 0");
  int bits = prec > 0 ? prec : num::default_precision_bits();
  BinomialPowerFloorResult out{Interval(bits), false};
  Interval a = Interval::pi(bits) * Interval::from_mpq(mpq_class(k + 1, 2), bits);
  Interval exponent_lhs = Interval::from_mpq(mpq_class(-r, 2 * (k - 2)), bits);
  Interval lhs = Interval::from_long(2, bits).pow_si(r) * a.pow(exponent_lhs);
  Interval mid_base = Interval::from_mpz(pow2_z(static_cast<unsigned long>(k - 1)), bits) / a.sqrt();
  Interval mid = mid_base.pow(Interval::from_mpq(mpq_class(r, k - 2), bits));
  out.floor_value = lhs;
  if (r == 0) {
    // Both sides are exactly 1.
    out.holds = true;
    return out;
  }
  bool first = Interval::compare_le(lhs, mid) == Verdict::kTrue;
  // Second link: the base inequality 2^(k-1)/sqrt(a) <= C(k-1,k/2-1),
  // raised to the positive power r/(k-2).
  Interval c = Interval::from_mpz(binom(k - 1, k / 2 - 1), bits);
  bool second = Interval::compare_le(mid_base, c) == Verdict::kTrue;
  out.holds = first && second;
  return out;
}

}  // namespace subrank::bounds
