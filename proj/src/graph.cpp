#include "critgroup/graph.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "critgroup/errors.hpp"

namespace critgroup {

LayeredSpec::LayeredSpec(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
  if (parts_.size() < 2) {
    throw DomainError("layered graph needs k >= 2 parts, got " +
                      std::to_string(parts_.size()));
  }
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] == 0) {
      throw DomainError("part " + std::to_string(i + 1) + " is empty");
    }
  }
}

std::size_t LayeredSpec::n(std::size_t i) const {
  if (i < 1 || i > parts_.size()) {
    throw DimensionError("part index " + std::to_string(i) + " outside 1.." +
                         std::to_string(parts_.size()));
  }
  return parts_[i - 1];
}

std::size_t LayeredSpec::vertex_count() const {
  return std::accumulate(parts_.begin(), parts_.end(), std::size_t{0});
}

std::size_t LayeredSpec::offset(std::size_t i) const {
  n(i);
  return std::accumulate(parts_.begin(), parts_.begin() + static_cast<std::ptrdiff_t>(i - 1),
                         std::size_t{0});
}

bool LayeredSpec::all_parts_at_least_two() const {
  return std::all_of(parts_.begin(), parts_.end(), [](std::size_t x) { return x >= 2; });
}

LayeredSpec parse_spec(const std::string& text) {
  std::vector<std::size_t> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                        : comma - pos);
    if (tok.empty() || tok.size() > 9 ||
        !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError("bad part size \"" + tok + "\" in spec \"" + text +
                       "\" (expected n1,n2,...,nk)");
    }
    const std::size_t v = std::stoul(tok);
    if (v == 0) throw ParseError("part sizes must be positive in \"" + text + "\"");
    parts.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (parts.size() < 2) throw ParseError("spec \"" + text + "\" needs at least two parts");
  return LayeredSpec(std::move(parts));
}

std::string to_string(const LayeredSpec& spec) {
  std::string out;
  for (std::size_t i = 0; i < spec.k(); ++i) {
    if (i) out += ',';
    out += std::to_string(spec.parts()[i]);
  }
  return out;
}

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges,
             std::optional<std::vector<std::size_t>> part_of)
    : vertex_count_(vertex_count), edges_(std::move(edges)), part_of_(std::move(part_of)) {
  if (part_of_ && part_of_->size() != vertex_count_) {
    throw DomainError("part labels do not cover every vertex");
  }
  for (auto& [u, v] : edges_) {
    if (u == v) throw DomainError("self-loop at vertex " + std::to_string(u));
    if (u >= vertex_count_ || v >= vertex_count_) {
      throw DomainError("edge endpoint outside 0.." + std::to_string(vertex_count_ - 1));
    }
    if (u > v) std::swap(u, v);
    if (part_of_ && (*part_of_)[u] == (*part_of_)[v]) {
      throw DomainError("edge {" + std::to_string(u) + "," + std::to_string(v) +
                        "} lies inside one part");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw DomainError("duplicate edge");
  }
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> deg(vertex_count_, 0);
  for (const auto& [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

std::vector<std::vector<std::size_t>> Graph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(vertex_count_);
  for (const auto& [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

bool Graph::is_connected() const {
  if (vertex_count_ == 0) return false;
  const auto adj = adjacency();
  std::vector<bool> seen(vertex_count_, false);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    const std::size_t u = q.front();
    q.pop();
    for (std::size_t w : adj[u]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        q.push(w);
      }
    }
  }
  return count == vertex_count_;
}

Graph layered_kpartite(const LayeredSpec& spec) {
  const std::size_t n = spec.vertex_count();
  std::vector<std::size_t> part_of(n);
  for (std::size_t i = 1; i <= spec.k(); ++i) {
    const std::size_t off = spec.offset(i);
    for (std::size_t j = 0; j < spec.n(i); ++j) part_of[off + j] = i - 1;
  }
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < spec.k(); ++i) {
    const std::size_t a = spec.offset(i), b = spec.offset(i + 1);
    for (std::size_t x = 0; x < spec.n(i); ++x) {
      for (std::size_t y = 0; y < spec.n(i + 1); ++y) edges.emplace_back(a + x, b + y);
    }
  }
  return Graph(n, std::move(edges), std::move(part_of));
}

IntMatrix laplacian(const Graph& g) {
  IntMatrix l(g.vertex_count(), g.vertex_count());
  for (const auto& [u, v] : g.edges()) {
    l(u, v) = -1;
    l(v, u) = -1;
    l(u, u) += 1;
    l(v, v) += 1;
  }
  return l;
}

Integer n_coefficient(const LayeredSpec& spec, std::size_t i) {
  if (i < 1 || i > spec.k()) {
    throw DimensionError("part index " + std::to_string(i) + " outside 1.." +
                         std::to_string(spec.k()));
  }
  if (i == 1) return Integer(static_cast<unsigned long>(spec.n(2)));
  if (i == spec.k()) return Integer(static_cast<unsigned long>(spec.n(spec.k() - 1)));
  return Integer(static_cast<unsigned long>(spec.n(i - 1) + spec.n(i + 1)));
}

IntMatrix layered_laplacian_direct(const LayeredSpec& spec) {
  IntMatrix l(spec.vertex_count(), spec.vertex_count());
  for (std::size_t i = 1; i <= spec.k(); ++i) {
    const std::size_t off = spec.offset(i);
    const Integer ni = n_coefficient(spec, i);
    for (std::size_t j = 0; j < spec.n(i); ++j) l(off + j, off + j) = ni;
    if (i == spec.k()) continue;
    const std::size_t next = spec.offset(i + 1);
    for (std::size_t x = 0; x < spec.n(i); ++x) {
      for (std::size_t y = 0; y < spec.n(i + 1); ++y) {
        l(off + x, next + y) = -1;
        l(next + y, off + x) = -1;
      }
    }
  }
  return l;
}

Family parse_family(const std::string& name) {
  if (name == "cycle") return Family::cycle;
  if (name == "complete") return Family::complete;
  if (name == "complete_bipartite") return Family::complete_bipartite;
  if (name == "path") return Family::path;
  if (name == "tree_random") return Family::tree_random;
  throw DomainError("unknown graph family \"" + name + "\"");
}

Graph standard_family(Family family, const std::vector<std::uint64_t>& params) {
  auto need = [&](std::size_t count, const char* what) {
    if (params.size() != count) {
      throw DomainError(std::string(what) + " takes " + std::to_string(count) +
                        " parameter(s)");
    }
  };
  std::vector<Edge> edges;
  switch (family) {
    case Family::cycle: {
      need(1, "cycle");
      const std::size_t n = params[0];
      if (n < 3) throw DomainError("cycle needs n >= 3");
      for (std::size_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
      return Graph(n, std::move(edges));
    }
    case Family::complete: {
      need(1, "complete");
      const std::size_t n = params[0];
      if (n < 1) throw DomainError("complete graph needs n >= 1");
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
      }
      return Graph(n, std::move(edges));
    }
    case Family::complete_bipartite: {
      need(2, "complete_bipartite");
      return layered_kpartite(LayeredSpec({params[0], params[1]}));
    }
    case Family::path: {
      need(1, "path");
      const std::size_t n = params[0];
      if (n < 1) throw DomainError("path needs n >= 1");
      for (std::size_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      return Graph(n, std::move(edges));
    }
    case Family::tree_random: {
      need(2, "tree_random");
      const std::size_t n = params[0];
      if (n < 1) throw DomainError("tree needs n >= 1");
      if (n == 2) edges.emplace_back(0, 1);
      if (n > 2) {
        // Decode a uniformly random Pruefer sequence.
        std::mt19937_64 rng(params[1]);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        std::vector<std::size_t> seq(n - 2);
        for (auto& s : seq) s = pick(rng);
        std::vector<std::size_t> deg(n, 1);
        for (std::size_t s : seq) ++deg[s];
        std::set<std::size_t> leaves;
        for (std::size_t v = 0; v < n; ++v) {
          if (deg[v] == 1) leaves.insert(v);
        }
        for (std::size_t s : seq) {
          const std::size_t leaf = *leaves.begin();
          leaves.erase(leaves.begin());
          edges.emplace_back(leaf, s);
          if (--deg[s] == 1) leaves.insert(s);
        }
        const std::size_t u = *leaves.begin();
        const std::size_t v = *std::next(leaves.begin());
        edges.emplace_back(u, v);
      }
      return Graph(n, std::move(edges));
    }
  }
  throw DomainError("unknown graph family");
}

void write_dot(std::ostream& os, const Graph& g) {
  std::vector<std::string> names(g.vertex_count());
  os << "graph G {\n";
  if (const auto& parts = g.part_of()) {
    std::size_t part_count = 0;
    for (std::size_t p : *parts) part_count = std::max(part_count, p + 1);
    std::vector<std::size_t> index_in_part(part_count, 0);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      const std::size_t p = (*parts)[v];
      names[v] = "p" + std::to_string(p + 1) + "_v" + std::to_string(++index_in_part[p]);
    }
    for (std::size_t p = 0; p < part_count; ++p) {
      os << "  subgraph cluster_p" << p + 1 << " {\n";
      os << "    label=\"part " << p + 1 << "\";\n";
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if ((*parts)[v] == p) os << "    " << names[v] << ";\n";
      }
      os << "  }\n";
    }
  } else {
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      names[v] = "v" + std::to_string(v + 1);
      os << "  " << names[v] << ";\n";
    }
  }
  for (const auto& [u, v] : g.edges()) os << "  " << names[u] << " -- " << names[v] << ";\n";
  os << "}\n";
}

std::string to_dot(const Graph& g) {
  std::ostringstream os;
  write_dot(os, g);
  return os.str();
}

}  // namespace critgroup
