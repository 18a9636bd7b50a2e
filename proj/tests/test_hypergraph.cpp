#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <random>
#include <set>

#include "subrank/binom.hpp"
#include "subrank/hypergraph.hpp"

using namespace subrank::hg;
namespace hg = subrank::hg;

namespace {

KGraph graph_of(int order, std::vector<int> sizes, std::vector<Edge> edges) {
  return KGraph::make(order, std::move(sizes), std::move(edges));
}

// Oracle: maximum induced matching over all edge subsets.
long brute_subrank(const KGraph& g) {
  const size_t m = g.edges.size();
  REQUIRE(m <= 22);
  long best = 0;
  for (uint64_t mask = 1; mask < (uint64_t{1} << m); ++mask) {
    std::vector<Edge> psi;
    for (size_t j = 0; j < m; ++j) {
      if ((mask >> j) & 1) psi.push_back(g.edges[j]);
    }
    if (static_cast<long>(psi.size()) <= best) continue;
    if (is_induced_matching(psi, g)) best = static_cast<long>(psi.size());
  }
  return best;
}

mpz_class multinomial(const Partition& lambda) {
  mpz_class r = subrank::factorial(lambda.k());
  for (int p : lambda.parts) r /= subrank::factorial(p);
  return r;
}

}  // namespace

TEST_CASE("type graphs match the paper's listings") {
  KGraph g11 = type_graph({{1, 1}});
  std::set<Edge> expected11 = {{2, 1}, {1, 2}};
  CHECK(std::set<Edge>(g11.edges.begin(), g11.edges.end()) == expected11);

  KGraph g22 = type_graph({{2, 2}});
  std::set<Edge> expected22 = {{2, 2, 1, 1}, {2, 1, 2, 1}, {2, 1, 1, 2},
                               {1, 2, 2, 1}, {1, 2, 1, 2}, {1, 1, 2, 2}};
  CHECK(std::set<Edge>(g22.edges.begin(), g22.edges.end()) == expected22);

  CHECK(type_graph({{3, 3}}).edge_count() == 20);
}

TEST_CASE("type graph edge counts are multinomial for k <= 12") {
  std::vector<Partition> partitions = {{{1, 1}},      {{2, 1}},    {{2, 2}},       {{3, 2, 1}},
                                       {{4, 4}},      {{5, 5}},    {{6, 6}},       {{3, 3, 3, 3}},
                                       {{7, 3, 1, 1}}, {{11, 1}},  {{2, 2, 2, 2, 2, 2}}};
  for (const Partition& lambda : partitions) {
    CHECK(mpz_class(static_cast<long>(type_graph(lambda).edge_count())) == multinomial(lambda));
  }
}

TEST_CASE("partition validation") {
  CHECK_THROWS_AS(type_graph({{1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(type_graph({{0}}), std::invalid_argument);
  CHECK_THROWS_AS(type_graph({{}}), std::invalid_argument);
}

TEST_CASE("kronecker products") {
  KGraph g22 = type_graph({{2, 2}});
  KGraph single = graph_of(4, {1, 1, 1, 1}, {{1, 1, 1, 1}});
  KGraph same = kronecker(g22, single);
  CHECK(same.edge_count() == g22.edge_count());
  CHECK(hg::subrank(same).value == hg::subrank(g22).value);

  CHECK(kronecker_power(type_graph({{1, 1}}), 2).edge_count() == 4);

  KGraph sq = kronecker_power(g22, 2);
  CHECK(sq.edge_count() == 36);
  CHECK(sq.sizes == std::vector<int>(4, 4));

  KGraph g21 = type_graph({{2, 1}});
  CHECK_THROWS_AS(kronecker(g22, g21), std::invalid_argument);
}

TEST_CASE("kronecker is associative up to relabeling") {
  KGraph a = type_graph({{2, 1}});
  KGraph b = graph_of(3, {2, 2, 2}, {{1, 1, 1}, {2, 2, 2}});
  KGraph c = graph_of(3, {2, 1, 2}, {{1, 1, 2}, {2, 1, 1}});
  KGraph left = kronecker(kronecker(a, b), c);
  KGraph right = kronecker(a, kronecker(b, c));
  CHECK(left.edge_count() == right.edge_count());
  CHECK(hg::subrank(left).value == hg::subrank(right).value);
}

TEST_CASE("induced matching checks from the paper") {
  KGraph phi = graph_of(3, {3, 3, 3},
                        {{1, 1, 1}, {2, 2, 2}, {3, 3, 3}, {1, 2, 3}});
  CHECK(is_induced_matching({{1, 1, 1}, {2, 2, 2}}, phi));
  CHECK_FALSE(is_induced_matching({{1, 1, 1}, {2, 2, 2}, {3, 3, 3}}, phi));
  CHECK(is_induced_matching({}, phi));
  CHECK_THROWS_AS(is_induced_matching({{3, 2, 1}}, phi), std::invalid_argument);
}

TEST_CASE("subrank: paper examples") {
  KGraph diag = graph_of(3, {3, 3, 3}, {{1, 1, 1}, {2, 2, 2}, {3, 3, 3}});
  SubrankResult r1 = hg::subrank(diag);
  CHECK(r1.value == 3);
  CHECK(r1.exact);
  CHECK(is_induced_matching(r1.witness, diag));

  KGraph spiked = graph_of(3, {3, 3, 3}, {{1, 1, 1}, {2, 2, 2}, {3, 3, 3}, {1, 2, 3}});
  SubrankResult r2 = hg::subrank(spiked);
  CHECK(r2.value == 2);
  CHECK(is_induced_matching(r2.witness, spiked));
  CHECK(r2.value == brute_subrank(spiked));
}

TEST_CASE("subrank of the middle type graph on 4 coordinates is 1") {
  KGraph g = type_graph({{2, 2}});
  SubrankResult r = hg::subrank(g);
  CHECK(r.value == 1);
  CHECK(r.value == brute_subrank(g));
}

TEST_CASE("subrank agrees with brute force on random small graphs") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    int k = 2 + static_cast<int>(rng() % 3);
    std::vector<int> sizes(k);
    for (int& s : sizes) s = 2 + static_cast<int>(rng() % 3);
    std::set<Edge> edges;
    int target = 3 + static_cast<int>(rng() % 9);
    for (int t = 0; t < target; ++t) {
      Edge e(k);
      for (int i = 0; i < k; ++i) e[i] = 1 + static_cast<int>(rng() % sizes[i]);
      edges.insert(e);
    }
    KGraph g = graph_of(k, sizes, std::vector<Edge>(edges.begin(), edges.end()));
    SubrankResult r = hg::subrank(g);
    CHECK(r.value == brute_subrank(g));
    CHECK(is_induced_matching(r.witness, g));
    CHECK(r.value <= *std::min_element(sizes.begin(), sizes.end()));
  }
}

TEST_CASE("witness is the lexicographically least optimum") {
  // Two optimal induced matchings; the smaller-index pair must be reported.
  KGraph g = graph_of(2, {4, 4}, {{1, 1}, {2, 2}, {3, 3}, {4, 4}});
  SubrankResult r = hg::subrank(g);
  CHECK(r.value == 4);  // the whole graph is an induced matching
  KGraph h = graph_of(2, {2, 2}, {{1, 1}, {1, 2}, {2, 1}, {2, 2}});
  SubrankResult rh = hg::subrank(h);
  CHECK(rh.value == 1);
  CHECK(rh.witness == std::vector<Edge>{{1, 1}});
}

TEST_CASE("supermultiplicativity on sampled pairs") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    int k = 2 + static_cast<int>(rng() % 2);
    auto sample = [&] {
      std::vector<int> sizes(k);
      for (int& s : sizes) s = 2 + static_cast<int>(rng() % 2);
      std::set<Edge> edges;
      for (int t = 0; t < 4 + static_cast<int>(rng() % 4); ++t) {
        Edge e(k);
        for (int i = 0; i < k; ++i) e[i] = 1 + static_cast<int>(rng() % sizes[i]);
        edges.insert(e);
      }
      return graph_of(k, sizes, std::vector<Edge>(edges.begin(), edges.end()));
    };
    KGraph a = sample(), b = sample();
    CHECK(hg::subrank(kronecker(a, b)).value >= hg::subrank(a).value * hg::subrank(b).value);
  }
}

TEST_CASE("power rates") {
  KGraph g11 = type_graph({{1, 1}});
  PowerRateResult r = subrank_power_rate(g11, 3);
  CHECK(r.result.value == 8);
  CHECK(r.rate == doctest::Approx(2.0));

  KGraph g22 = type_graph({{2, 2}});
  PowerRateResult r1 = subrank_power_rate(g22, 1);
  CHECK(r1.result.value == hg::subrank(g22).value);

  // Exhaustive enumeration over the 36-edge square: 48 induced matchings of
  // size 2 and none of size 3.
  PowerRateResult r2 = subrank_power_rate(g22, 2);
  CHECK(r2.result.exact);
  CHECK(r2.result.value == 2);
  CHECK(is_induced_matching(r2.result.witness, kronecker_power(g22, 2)));
  long pairs_found = 0;
  KGraph sq = kronecker_power(g22, 2);
  for (size_t i = 0; i < sq.edges.size(); ++i) {
    for (size_t j = i + 1; j < sq.edges.size(); ++j) {
      if (is_induced_matching({sq.edges[i], sq.edges[j]}, sq)) ++pairs_found;
    }
  }
  CHECK(pairs_found == 48);
}

TEST_CASE("budget exhaustion degrades to a flagged lower bound") {
  KGraph g = kronecker_power(type_graph({{2, 2}}), 2);
  SubrankResult r = hg::subrank(g, /*budget=*/5);
  CHECK_FALSE(r.exact);
  SubrankResult full = hg::subrank(g);
  CHECK(full.exact);
  CHECK(r.value <= full.value);
}
