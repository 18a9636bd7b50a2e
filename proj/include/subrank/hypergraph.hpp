#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace subrank::hg {

using Edge = std::vector<int>;  // k entries, 1-based, entry i in [sizes[i]]

struct Partition {
  std::vector<int> parts;  // weakly decreasing, positive

  int k() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
  }
  void validate() const;
};

// k-partite k-uniform hypergraph with canonical (sorted, deduplicated) edges.
struct KGraph {
  int order = 0;
  std::vector<int> sizes;
  std::vector<Edge> edges;

  static KGraph make(int order, std::vector<int> sizes, std::vector<Edge> edges);
  size_t edge_count() const { return edges.size(); }
};

// All k-tuples over [n] with letter multiplicities lambda.
KGraph type_graph(const Partition& lambda);

// Kronecker product; pair vertices flattened row-major:
// (a_i, b_i) -> (a_i - 1) * m_i + b_i.
KGraph kronecker(const KGraph& a, const KGraph& b);

KGraph kronecker_power(const KGraph& a, int n);

// Checks Psi = Phi  ∩ (Psi_1 x ... x Psi_k) and coordinatewise distinctness.
// Throws when Psi is not a subset of Phi's edges.
bool is_induced_matching(const std::vector<Edge>& psi, const KGraph& phi);

struct SubrankResult {
  long long value = 0;
  std::vector<Edge> witness;  // lexicographically least optimum
  bool exact = true;          // false when the node budget ran out
  uint64_t nodes = 0;
};

inline constexpr uint64_t kDefaultSearchBudget = 100'000'000;

// Exact maximum induced matching by branch and bound. With an exhausted
// budget the best-found value is returned as a flagged lower bound.
SubrankResult subrank(const KGraph& phi, uint64_t budget = kDefaultSearchBudget);

struct PowerRateResult {
  SubrankResult result;
  int power = 1;
  double rate = 0.0;  // value^(1/power), a lower estimate of the asymptotic subrank
};

PowerRateResult subrank_power_rate(const KGraph& phi, int power,
                                   uint64_t budget = kDefaultSearchBudget);

}  // namespace subrank::hg
