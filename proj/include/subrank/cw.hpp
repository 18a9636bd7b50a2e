#pragma once

#include <utility>
#include <vector>

#include "subrank/hypergraph.hpp"

namespace subrank::cw {

// Injective integer labelings alpha_i : [n_i] -> Z, one per coordinate.
struct AlphaMaps {
  std::vector<std::vector<long long>> maps;  // maps[i][v-1] = alpha_i(v)

  long long apply(int coord, int vertex) const { return maps[coord][vertex - 1]; }
  bool all_injective() const;
};

// alpha_1..alpha_(k-1) identity, alpha_k(x) = x - sum_j j*lambda_j, which
// zeroes every edge sum of the type graph.
AlphaMaps alpha_for_type_graph(const hg::Partition& lambda);

// Every edge sums to zero under alpha and each alpha_i is injective.
bool check_tightness(const hg::KGraph& phi, const AlphaMaps& alpha);

// Ordered pairs (x, y) of edges sharing a constant coordinate.
struct PairSet {
  std::vector<std::pair<hg::Edge, hg::Edge>> pairs;
  int fixed_coord = 0;  // 1-based coordinate with x_i = y_i across all pairs

  // Validates: pairs nonempty, inside the graph, not all diagonal, and finds
  // a constant coordinate (preferring requested_coord when it qualifies).
  static PairSet make(const hg::KGraph& phi, std::vector<std::pair<hg::Edge, hg::Edge>> pairs,
                      int requested_coord = 0);

  // Same but permits all-diagonal sets, which the entropy maximization
  // accepts even though they fall outside the rank machinery's domain.
  static PairSet make_with_diagonal(const hg::KGraph& phi,
                                    std::vector<std::pair<hg::Edge, hg::Edge>> pairs,
                                    int requested_coord = 0);
};

// Rank over Q of the |R| x k matrix with rows alpha(x) - alpha(y),
// by fraction-free elimination over the integers.
int rank_Q(const PairSet& r, const AlphaMaps& alpha);

// Dimension of Span_F2 { x - y }; vertex labels reduced mod 2.
int rank_F2(const PairSet& r);

// The reduction from pairs over the middle type graph (vertices in {1,2},
// k coordinates) to pairs over the dropped-coordinate graph: drop the fixed
// first coordinate; negate the remaining tuple when the dropped value was the
// low letter. Checks |R| <= 2|R'| and rank_F2 preservation on output.
PairSet reduce_R_to_Rprime(const PairSet& r, long k);

struct EntropyValue {
  double bits = 0.0;
  double accuracy = 1e-12;  // evaluation precision tag
};

double shannon_entropy_bits(const std::vector<double>& p);

struct MaxEntropyResult {
  EntropyValue entropy;
  std::vector<double> q;  // aligned with the pair list
  double residual = 0.0;  // max marginal error after the last sweep
  int iterations = 0;
  bool converged = false;
};

// Iterative proportional fitting on the support R toward the 2k marginal
// targets (k for the x side then k for the y side, each over V_i).
MaxEntropyResult max_entropy_with_marginals(const hg::KGraph& phi, const PairSet& r,
                                            const std::vector<std::vector<double>>& targets,
                                            int max_iterations = 100000, double tolerance = 1e-10);

struct Cw3Result {
  EntropyValue value;
  std::vector<double> distribution;  // aligned with the canonical edge order
};

// max_P min_i H(P_i) over edge distributions of a tight 3-graph: coarse
// simplex grid followed by projected subgradient refinement. Any feasible P
// yields a valid lower bound, so the returned value is certified-lower.
Cw3Result cw3_lower_bound(const hg::KGraph& phi, const AlphaMaps& alpha);

// H(lambda/k) in bits.
EntropyValue conjectured_value(const hg::Partition& lambda);

}  // namespace subrank::cw
