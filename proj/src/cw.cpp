#include "subrank/cw.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>

#include "subrank/bitvec.hpp"
#include "subrank/gf2.hpp"

namespace subrank::cw {

bool AlphaMaps::all_injective() const {
  for (const auto& m : maps) {
    std::set<long long> seen(m.begin(), m.end());
    if (seen.size() != m.size()) return false;
  }
  return true;
}

AlphaMaps alpha_for_type_graph(const hg::Partition& lambda) {
  lambda.validate();
  const int k = lambda.k();
  const int n = static_cast<int>(lambda.parts.size());
  long long shift = 0;
  for (int j = 1; j <= n; ++j) shift += static_cast<long long>(j) * lambda.parts[j - 1];
  AlphaMaps alpha;
  alpha.maps.assign(k, {});
  for (int i = 0; i < k; ++i) {
    for (int v = 1; v <= n; ++v) {
      alpha.maps[i].push_back(i == k - 1 ? v - shift : v);
    }
  }
  return alpha;
}

bool check_tightness(const hg::KGraph& phi, const AlphaMaps& alpha) {
  if (static_cast<int>(alpha.maps.size()) != phi.order) return false;
  for (int i = 0; i < phi.order; ++i) {
    if (static_cast<int>(alpha.maps[i].size()) < phi.sizes[i]) return false;
  }
  if (!alpha.all_injective()) return false;
  for (const hg::Edge& e : phi.edges) {
    long long s = 0;
    for (int i = 0; i < phi.order; ++i) s += alpha.apply(i, e[i]);
    if (s != 0) return false;
  }
  return true;
}

PairSet PairSet::make(const hg::KGraph& phi, std::vector<std::pair<hg::Edge, hg::Edge>> pairs,
                      int requested_coord) {
  bool off_diagonal = false;
  for (const auto& [x, y] : pairs) {
    if (x != y) off_diagonal = true;
  }
  if (!off_diagonal) throw std::invalid_argument("PairSet: subset of the diagonal");
  return make_with_diagonal(phi, std::move(pairs), requested_coord);
}

PairSet PairSet::make_with_diagonal(const hg::KGraph& phi,
                                    std::vector<std::pair<hg::Edge, hg::Edge>> pairs,
                                    int requested_coord) {
  if (pairs.empty()) throw std::invalid_argument("PairSet: empty");
  for (const auto& [x, y] : pairs) {
    if (!std::binary_search(phi.edges.begin(), phi.edges.end(), x) ||
        !std::binary_search(phi.edges.begin(), phi.edges.end(), y)) {
      throw std::invalid_argument("PairSet: pair outside the graph");
    }
  }
  PairSet r;
  r.pairs = std::move(pairs);
  auto constant_at = [&](int i) {
    for (const auto& [x, y] : r.pairs) {
      if (x[i - 1] != y[i - 1]) return false;
    }
    return true;
  };
  if (requested_coord >= 1 && requested_coord <= phi.order && constant_at(requested_coord)) {
    r.fixed_coord = requested_coord;
    return r;
  }
  for (int i = 1; i <= phi.order; ++i) {
    if (constant_at(i)) {
      r.fixed_coord = i;
      return r;
    }
  }
  throw std::invalid_argument("PairSet: no coordinate is constant across all pairs");
}

int rank_Q(const PairSet& r, const AlphaMaps& alpha) {
  const int k = static_cast<int>(alpha.maps.size());
  std::vector<std::vector<mpz_class>> rows;
  for (const auto& [x, y] : r.pairs) {
    std::vector<mpz_class> row(k);
    for (int i = 0; i < k; ++i) {
      row[i] = mpz_class(static_cast<long>(alpha.apply(i, x[i]))) -
               mpz_class(static_cast<long>(alpha.apply(i, y[i])));
    }
    rows.push_back(std::move(row));
  }
  // Fraction-free Gaussian elimination; integer pivots, exact.
  int rank = 0;
  for (int col = 0; col < k && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int i = rank; i < static_cast<int>(rows.size()); ++i) {
      if (rows[i][col] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int i = rank + 1; i < static_cast<int>(rows.size()); ++i) {
      if (rows[i][col] == 0) continue;
      mpz_class a = rows[rank][col], b = rows[i][col];
      for (int j = col; j < k; ++j) rows[i][j] = rows[i][j] * a - rows[rank][j] * b;
    }
    ++rank;
  }
  return rank;
}

int rank_F2(const PairSet& r) {
  if (r.pairs.empty()) return 0;
  const int k = static_cast<int>(r.pairs.front().first.size());
  std::vector<BitVec> diffs;
  for (const auto& [x, y] : r.pairs) {
    BitVec v(k);
    for (int i = 0; i < k; ++i) v.set(i, ((x[i] - y[i]) % 2 + 2) % 2 == 1);
    diffs.push_back(std::move(v));
  }
  return gf2::Subspace::span(k, diffs).dim();
}

PairSet reduce_R_to_Rprime(const PairSet& r, long k) {
  if (r.pairs.empty()) throw std::invalid_argument("reduce_R_to_Rprime: empty pair set");
  // Bring the fixed coordinate to the front; a coordinate permutation changes
  // neither pair counts nor the span of differences.
  const int fixed = r.fixed_coord - 1;
  auto permuted = [&](const hg::Edge& e) {
    hg::Edge p(e.size());
    p[0] = e[fixed];
    for (size_t i = 0, j = 1; i < e.size(); ++i) {
      if (static_cast<int>(i) != fixed) p[j++] = e[i];
    }
    return p;
  };
  std::set<std::pair<hg::Edge, hg::Edge>> out;
  for (const auto& [x0, y0] : r.pairs) {
    hg::Edge x = permuted(x0), y = permuted(y0);
    if (x[0] != y[0]) throw std::invalid_argument("reduce_R_to_Rprime: coordinate not constant");
    for (int v : x) {
      if (v != 1 && v != 2) {
        throw std::invalid_argument("reduce_R_to_Rprime: vertices must be in {1,2}");
      }
    }
    hg::Edge xp(x.begin() + 1, x.end());
    hg::Edge yp(y.begin() + 1, y.end());
    if (x[0] == 1) {
      // Negate: complement each remaining letter within {1,2}.
      for (int& v : xp) v = 3 - v;
      for (int& v : yp) v = 3 - v;
    }
    out.emplace(std::move(xp), std::move(yp));
  }
  PairSet rp;
  rp.pairs.assign(out.begin(), out.end());
  rp.fixed_coord = 0;
  if (2 * rp.pairs.size() < r.pairs.size()) {
    throw std::logic_error("reduce_R_to_Rprime: |R| <= 2|R'| violated");
  }
  if (rank_F2(rp) != rank_F2(r)) {
    throw std::logic_error("reduce_R_to_Rprime: F2 rank not preserved");
  }
  (void)k;
  return rp;
}

double shannon_entropy_bits(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

MaxEntropyResult max_entropy_with_marginals(const hg::KGraph& phi, const PairSet& r,
                                            const std::vector<std::vector<double>>& targets,
                                            int max_iterations, double tolerance) {
  const int k = phi.order;
  if (static_cast<int>(targets.size()) != 2 * k) {
    throw std::invalid_argument("max_entropy_with_marginals: expected 2k marginal targets");
  }
  for (int c = 0; c < 2 * k; ++c) {
    if (static_cast<int>(targets[c].size()) != phi.sizes[c % k]) {
      throw std::invalid_argument("max_entropy_with_marginals: target size mismatch");
    }
  }
  const size_t m = r.pairs.size();
  // value of pair p under constraint c: coordinate of x for c < k, of y after.
  auto value_of = [&](size_t p, int c) {
    const auto& [x, y] = r.pairs[p];
    return c < k ? x[c] : y[c - k];
  };
  MaxEntropyResult res;
  res.q.assign(m, 1.0 / static_cast<double>(m));
  std::vector<double> marginal;
  int it = 0;
  for (; it < max_iterations; ++it) {
    for (int c = 0; c < 2 * k; ++c) {
      marginal.assign(phi.sizes[c % k] + 1, 0.0);
      for (size_t p = 0; p < m; ++p) marginal[value_of(p, c)] += res.q[p];
      for (size_t p = 0; p < m; ++p) {
        int v = value_of(p, c);
        if (marginal[v] > 0.0) res.q[p] *= targets[c][v - 1] / marginal[v];
      }
    }
    // Residual after a full sweep; an infeasible target shows up here.
    double worst = 0.0;
    for (int c = 0; c < 2 * k; ++c) {
      marginal.assign(phi.sizes[c % k] + 1, 0.0);
      for (size_t p = 0; p < m; ++p) marginal[value_of(p, c)] += res.q[p];
      for (int v = 1; v <= phi.sizes[c % k]; ++v) {
        worst = std::max(worst, std::abs(marginal[v] - targets[c][v - 1]));
      }
    }
    res.residual = worst;
    if (worst < tolerance) {
      res.converged = true;
      break;
    }
  }
  res.iterations = it;
  double total = 0.0;
  for (double x : res.q) total += x;
  if (total > 0.0) {
    for (double& x : res.q) x /= total;
  }
  res.entropy.bits = shannon_entropy_bits(res.q);
  res.entropy.accuracy = std::max(res.residual, 1e-14);
  double cap = std::log2(static_cast<double>(m));
  if (res.entropy.bits > cap + 1e-9) {
    throw std::logic_error("max_entropy_with_marginals: entropy above log2|R|");
  }
  return res;
}

namespace {

struct MarginalView {
  // index of each edge's vertex per coordinate, 0-based
  std::vector<std::vector<int>> vertex_of_edge;
  std::vector<int> sizes;
};

MarginalView make_view(const hg::KGraph& phi) {
  MarginalView v;
  v.sizes = phi.sizes;
  v.vertex_of_edge.assign(phi.order, std::vector<int>(phi.edges.size()));
  for (size_t e = 0; e < phi.edges.size(); ++e) {
    for (int i = 0; i < phi.order; ++i) v.vertex_of_edge[i][e] = phi.edges[e][i] - 1;
  }
  return v;
}

double min_marginal_entropy(const MarginalView& view, const std::vector<double>& p) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> marg;
  for (size_t i = 0; i < view.vertex_of_edge.size(); ++i) {
    marg.assign(view.sizes[i], 0.0);
    for (size_t e = 0; e < p.size(); ++e) marg[view.vertex_of_edge[i][e]] += p[e];
    best = std::min(best, shannon_entropy_bits(marg));
  }
  return best;
}

void project_to_simplex(std::vector<double>& p) {
  // Euclidean projection onto the probability simplex.
  std::vector<double> u = p;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  int rho = 0;
  for (size_t j = 0; j < u.size(); ++j) {
    css += u[j];
    double t = (css - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0) {
      rho = static_cast<int>(j + 1);
      theta = t;
    }
  }
  for (double& x : p) x = std::max(0.0, x - theta);
  double s = 0.0;
  for (double x : p) s += x;
  for (double& x : p) x /= s;
}

}  // namespace

Cw3Result cw3_lower_bound(const hg::KGraph& phi, const AlphaMaps& alpha) {
  if (phi.order != 3) throw std::invalid_argument("cw3_lower_bound: 3-graphs only");
  if (!check_tightness(phi, alpha)) {
    throw std::invalid_argument("cw3_lower_bound: graph is not tight under alpha");
  }
  const size_t m = phi.edges.size();
  MarginalView view = make_view(phi);
  Cw3Result out;
  out.distribution.assign(m, 1.0 / static_cast<double>(m));
  double best = min_marginal_entropy(view, out.distribution);

  if (m == 1) {
    out.value = {0.0, 1e-15};
    return out;
  }

  // Coarse simplex grid; 1/200 per coordinate at desk sizes, coarsened when
  // the lattice would outgrow the point budget.
  int grid = 200;
  auto lattice_points = [&](int g) {
    double count = 1.0;
    for (size_t i = 1; i < m; ++i) count *= static_cast<double>(g + i) / static_cast<double>(i);
    return count;
  };
  while (grid > 8 && lattice_points(grid) > 3.0e5) grid /= 2;

  std::vector<int> comp(m, 0);
  std::vector<double> p(m);
  // Enumerate compositions of `grid` into m parts.
  std::vector<int> stack(m, 0);
  std::function<void(size_t, int)> enumerate = [&](size_t idx, int rest) {
    if (idx + 1 == m) {
      stack[idx] = rest;
      for (size_t i = 0; i < m; ++i) p[i] = static_cast<double>(stack[i]) / grid;
      double v = min_marginal_entropy(view, p);
      if (v > best) {
        best = v;
        out.distribution = p;
      }
      return;
    }
    for (int c = 0; c <= rest; ++c) {
      stack[idx] = c;
      enumerate(idx + 1, rest - c);
    }
  };
  enumerate(0, grid);

  // Projected subgradient ascent on min_i H(P_i) from the best grid point.
  std::vector<double> cur = out.distribution;
  std::vector<double> marg;
  for (int step = 0; step < 4000; ++step) {
    // Active coordinate: the marginal with least entropy.
    int active = 0;
    double low = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
      marg.assign(view.sizes[i], 0.0);
      for (size_t e = 0; e < m; ++e) marg[view.vertex_of_edge[i][e]] += cur[e];
      double h = shannon_entropy_bits(marg);
      if (h < low) {
        low = h;
        active = i;
      }
    }
    marg.assign(view.sizes[active], 0.0);
    for (size_t e = 0; e < m; ++e) marg[view.vertex_of_edge[active][e]] += cur[e];
    double rate = 0.05 / std::sqrt(static_cast<double>(step + 1));
    std::vector<double> trial = cur;
    for (size_t e = 0; e < m; ++e) {
      double pe = marg[view.vertex_of_edge[active][e]];
      double g = (pe > 0.0) ? -(std::log2(pe) + 1.0 / std::log(2.0)) : 10.0;
      trial[e] += rate * g;
    }
    project_to_simplex(trial);
    double v = min_marginal_entropy(view, trial);
    cur = trial;
    if (v > best) {
      best = v;
      out.distribution = cur;
    }
  }
  out.value = {best, 1e-4};
  return out;
}

EntropyValue conjectured_value(const hg::Partition& lambda) {
  lambda.validate();
  const double k = static_cast<double>(lambda.k());
  std::vector<double> p;
  for (int part : lambda.parts) p.push_back(static_cast<double>(part) / k);
  return {shannon_entropy_bits(p), 1e-14};
}

}  // namespace subrank::cw
