#include "subrank/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace subrank::hg {

void Partition::validate() const {
  if (parts.empty()) throw std::invalid_argument("Partition: empty");
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] <= 0) throw std::invalid_argument("Partition: parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1]) {
      throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
  }
}

KGraph KGraph::make(int order, std::vector<int> sizes, std::vector<Edge> edges) {
  if (order <= 0) throw std::invalid_argument("KGraph: order must be positive");
  if (static_cast<int>(sizes.size()) != order) {
    throw std::invalid_argument("KGraph: sizes length must equal order");
  }
  for (int s : sizes) {
    if (s <= 0) throw std::invalid_argument("KGraph: vertex set sizes must be positive");
  }
  for (const Edge& e : edges) {
    if (static_cast<int>(e.size()) != order) {
      throw std::invalid_argument("KGraph: edge arity mismatch");
    }
    for (int i = 0; i < order; ++i) {
      if (e[i] < 1 || e[i] > sizes[i]) {
        throw std::invalid_argument("KGraph: edge coordinate out of range");
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  KGraph g;
  g.order = order;
  g.sizes = std::move(sizes);
  g.edges = std::move(edges);
  return g;
}

KGraph type_graph(const Partition& lambda) {
  lambda.validate();
  const int k = lambda.k();
  const int n = static_cast<int>(lambda.parts.size());
  Edge proto;
  proto.reserve(k);
  for (int letter = 1; letter <= n; ++letter) {
    for (int c = 0; c < lambda.parts[letter - 1]; ++c) proto.push_back(letter);
  }
  std::vector<Edge> edges;
  std::sort(proto.begin(), proto.end());
  do {
    edges.push_back(proto);
  } while (std::next_permutation(proto.begin(), proto.end()));
  return KGraph::make(k, std::vector<int>(k, n), std::move(edges));
}

KGraph kronecker(const KGraph& a, const KGraph& b) {
  if (a.order != b.order) throw std::invalid_argument("kronecker: order mismatch");
  const int k = a.order;
  std::vector<int> sizes(k);
  for (int i = 0; i < k; ++i) sizes[i] = a.sizes[i] * b.sizes[i];
  std::vector<Edge> edges;
  edges.reserve(a.edges.size() * b.edges.size());
  for (const Edge& ea : a.edges) {
    for (const Edge& eb : b.edges) {
      Edge e(k);
      for (int i = 0; i < k; ++i) e[i] = (ea[i] - 1) * b.sizes[i] + eb[i];
      edges.push_back(std::move(e));
    }
  }
  return KGraph::make(k, std::move(sizes), std::move(edges));
}

KGraph kronecker_power(const KGraph& a, int n) {
  if (n < 1) throw std::invalid_argument("kronecker_power: power must be >= 1");
  KGraph g = a;
  for (int i = 1; i < n; ++i) g = kronecker(g, a);
  return g;
}

bool is_induced_matching(const std::vector<Edge>& psi, const KGraph& phi) {
  const int k = phi.order;
  std::set<Edge> members(psi.begin(), psi.end());
  for (const Edge& e : members) {
    if (!std::binary_search(phi.edges.begin(), phi.edges.end(), e)) {
      throw std::invalid_argument("is_induced_matching: subset must lie inside the graph");
    }
  }
  // Matching: per coordinate, all values distinct across members.
  for (int i = 0; i < k; ++i) {
    std::set<int> seen;
    for (const Edge& e : members) {
      if (!seen.insert(e[i]).second) return false;
    }
  }
  // Induced: no other graph edge inside the marginal product.
  std::vector<std::vector<char>> in_marginal(k);
  for (int i = 0; i < k; ++i) in_marginal[i].assign(phi.sizes[i] + 1, 0);
  for (const Edge& e : members) {
    for (int i = 0; i < k; ++i) in_marginal[i][e[i]] = 1;
  }
  for (const Edge& e : phi.edges) {
    bool inside = true;
    for (int i = 0; i < k && inside; ++i) inside = in_marginal[i][e[i]];
    if (inside && !members.count(e)) return false;
  }
  return true;
}

namespace {

// Depth-first search state for the induced matching maximum.
struct Search {
  const KGraph& phi;
  uint64_t budget;
  uint64_t nodes = 0;
  bool exact = true;
  std::vector<int> chosen;           // indices into phi.edges, increasing
  std::vector<int> best;
  std::vector<std::vector<char>> used;  // used[i][v]: value v taken in coordinate i

  explicit Search(const KGraph& g, uint64_t b) : phi(g), budget(b) {
    used.resize(g.order);
    for (int i = 0; i < g.order; ++i) used[i].assign(g.sizes[i] + 1, 0);
  }

  bool compatible(const Edge& e) const {
    for (int i = 0; i < phi.order; ++i) {
      if (used[i][e[i]]) return false;
    }
    return true;
  }

  // True when some non-member edge falls inside the current marginal product.
  bool violated(const std::vector<char>& member) const {
    for (size_t j = 0; j < phi.edges.size(); ++j) {
      if (member[j]) continue;
      const Edge& e = phi.edges[j];
      bool inside = true;
      for (int i = 0; i < phi.order && inside; ++i) inside = used[i][e[i]];
      if (inside) return true;
    }
    return false;
  }

  void run() {
    std::vector<int> cand(phi.edges.size());
    for (size_t j = 0; j < cand.size(); ++j) cand[j] = static_cast<int>(j);
    std::vector<char> member(phi.edges.size(), 0);
    dfs(cand, member);
  }

  void dfs(const std::vector<int>& cand, std::vector<char>& member) {
    if (++nodes > budget) {
      exact = false;
      return;
    }
    if (chosen.size() + cand.size() <= best.size()) return;  // cannot improve
    for (size_t idx = 0; idx < cand.size(); ++idx) {
      if (!exact) return;
      if (chosen.size() + (cand.size() - idx) <= best.size()) return;
      int j = cand[idx];
      const Edge& e = phi.edges[j];
      for (int i = 0; i < phi.order; ++i) used[i][e[i]] = 1;
      member[j] = 1;
      chosen.push_back(j);
      if (!violated(member)) {
        if (chosen.size() > best.size()) best = chosen;
        std::vector<int> next;
        next.reserve(cand.size() - idx);
        for (size_t t = idx + 1; t < cand.size(); ++t) {
          if (compatible(phi.edges[cand[t]])) next.push_back(cand[t]);
        }
        if (!next.empty()) dfs(next, member);
      }
      chosen.pop_back();
      member[j] = 0;
      for (int i = 0; i < phi.order; ++i) used[i][e[i]] = 0;
    }
  }
};

}  // namespace

SubrankResult subrank(const KGraph& phi, uint64_t budget) {
  SubrankResult res;
  if (phi.edges.empty()) return res;
  Search s(phi, budget);
  s.run();
  res.value = static_cast<long long>(s.best.size());
  res.exact = s.exact;
  res.nodes = s.nodes;
  for (int j : s.best) res.witness.push_back(phi.edges[j]);
  return res;
}

PowerRateResult subrank_power_rate(const KGraph& phi, int power, uint64_t budget) {
  PowerRateResult pr;
  pr.power = power;
  KGraph g = kronecker_power(phi, power);
  pr.result = subrank(g, budget);
  pr.rate = std::pow(static_cast<double>(pr.result.value), 1.0 / power);
  return pr;
}

}  // namespace subrank::hg
