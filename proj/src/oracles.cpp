#include "critgroup/oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

#include "critgroup/errors.hpp"

namespace critgroup {

namespace {

void require_connected(const Graph& g, const char* what) {
  if (!g.is_connected()) throw DomainError(std::string(what) + ": graph is not connected");
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

Integer spanning_trees_bruteforce(const Graph& g) {
  const std::size_t m = g.edge_count();
  if (m > kBruteForceMaxEdges) {
    throw DomainError("brute-force enumeration limited to " +
                      std::to_string(kBruteForceMaxEdges) + " edges, got " + std::to_string(m));
  }
  require_connected(g, "spanning_trees_bruteforce");
  const std::size_t n = g.vertex_count();
  if (n == 1) return 1;
  const std::size_t r = n - 1;
  if (r > m) return 0;
  unsigned long count = 0;
  const std::uint32_t limit = std::uint32_t{1} << m;
  // Gosper's hack walks all r-subsets of the m edges.
  for (std::uint32_t s = (std::uint32_t{1} << r) - 1; s < limit;) {
    UnionFind uf(n);
    bool acyclic = true;
    for (std::size_t e = 0; e < m && acyclic; ++e) {
      if (s >> e & 1u) acyclic = uf.unite(g.edges()[e].first, g.edges()[e].second);
    }
    if (acyclic) ++count;
    const std::uint32_t c = s & -s;
    const std::uint32_t hi = s + c;
    if (hi == 0 || hi >= limit) break;
    s = (((hi ^ s) >> 2) / c) | hi;
  }
  return count;
}

Integer signed_cofactor(const IntMatrix& l, std::size_t i, std::size_t j) {
  Integer d = det(delete_row_col(l, i, j));
  if ((i + j) % 2 == 1) d = -d;
  return d;
}

Integer spanning_trees_matrixtree(const Graph& g) {
  require_connected(g, "spanning_trees_matrixtree");
  const std::size_t n = g.vertex_count();
  if (n == 1) return 1;
  const IntMatrix l = laplacian(g);
  const Integer a = signed_cofactor(l, 0, 0);
  const Integer b = signed_cofactor(l, n - 1, 0);
  const Integer c = signed_cofactor(l, 0, 1);
  if (a != b || a != c) {
    throw ConsistencyError("cofactors disagree: " + a.get_str() + ", " + b.get_str() + ", " +
                           c.get_str());
  }
  if (a <= 0) throw ConsistencyError("non-positive cofactor " + a.get_str());
  return a;
}

double spanning_trees_spectral(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n > kSpectralMaxVertices) {
    throw DomainError("spectral oracle limited to " + std::to_string(kSpectralMaxVertices) +
                      " vertices");
  }
  if (n == 1) return 1.0;
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  for (const auto& [u, v] : g.edges()) {
    const auto a = static_cast<Eigen::Index>(u), b = static_cast<Eigen::Index>(v);
    l(a, b) -= 1;
    l(b, a) -= 1;
    l(a, a) += 1;
    l(b, b) += 1;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l, Eigen::EigenvaluesOnly);
  // Eigenvalues come out ascending; skip the smallest (the zero one).
  double log_sum = 0.0;
  for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i) {
    const double ev = es.eigenvalues()(i);
    if (ev <= 0.0) return 0.0;
    log_sum += std::log(ev);
  }
  return std::exp(log_sum - std::log(static_cast<double>(n)));
}

ChipConfig stabilize(ChipConfig cfg, const Graph& g, FiringOrder order) {
  const std::size_t n = g.vertex_count();
  if (cfg.chips.size() != n || cfg.sink >= n) {
    throw DimensionError("chip configuration does not match the graph");
  }
  const auto adj = g.adjacency();
  const auto deg = g.degrees();
  cfg.chips[cfg.sink] = 0;
  for (bool fired = true; fired;) {
    fired = false;
    for (std::size_t step = 0; step < n; ++step) {
      const std::size_t v = order == FiringOrder::ascending ? step : n - 1 - step;
      if (v == cfg.sink || deg[v] == 0) continue;
      const auto d = static_cast<std::int64_t>(deg[v]);
      if (cfg.chips[v] < d) continue;
      const std::int64_t times = cfg.chips[v] / d;
      cfg.chips[v] -= times * d;
      for (std::size_t w : adj[v]) {
        if (w != cfg.sink) cfg.chips[w] += times;
      }
      fired = true;
    }
  }
  return cfg;
}

bool is_recurrent(const ChipConfig& cfg, const Graph& g) {
  ChipConfig burned = cfg;
  const auto adj = g.adjacency();
  for (std::size_t w : adj.at(cfg.sink)) burned.chips[w] += 1;
  return stabilize(std::move(burned), g) == cfg;
}

Integer sandpile_group_order(const Graph& g, std::size_t sink) {
  if (sink >= g.vertex_count()) throw DimensionError("sink outside the vertex range");
  const Integer trees = spanning_trees_matrixtree(g);
  if (trees > kSandpileMaxTrees) {
    throw DomainError("sandpile enumeration limited to " + std::to_string(kSandpileMaxTrees) +
                      " spanning trees, graph has " + trees.get_str());
  }
  const auto deg = g.degrees();
  ChipConfig top{sink, std::vector<std::int64_t>(g.vertex_count(), 0)};
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (v != sink) top.chips[v] = static_cast<std::int64_t>(deg[v]) - 1;
  }
  std::set<std::vector<std::int64_t>> seen{top.chips};
  std::queue<ChipConfig> todo;
  todo.push(top);
  while (!todo.empty()) {
    const ChipConfig c = todo.front();
    todo.pop();
    if (!is_recurrent(c, g)) {
      throw ConsistencyError("reached a configuration that fails the burning test");
    }
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      if (v == sink) continue;
      ChipConfig next = c;
      next.chips[v] += 1;
      next = stabilize(std::move(next), g);
      if (seen.insert(next.chips).second) todo.push(std::move(next));
    }
    if (seen.size() > kSandpileMaxTrees) {
      throw ConsistencyError("more recurrent configurations than spanning trees");
    }
  }
  return static_cast<unsigned long>(seen.size());
}

}  // namespace critgroup
