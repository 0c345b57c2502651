#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "critgroup/int_matrix.hpp"

namespace critgroup {

/// Part sizes (n1, ..., nk) of the layered graph G_{n1,...,nk}: part i is
/// completely joined to parts i-1 and i+1 and to nothing else.
class LayeredSpec {
 public:
  /// Throws DomainError unless k >= 2 and every n_i >= 1.
  explicit LayeredSpec(std::vector<std::size_t> parts);

  std::size_t k() const { return parts_.size(); }
  /// 1-based part size n_i.
  std::size_t n(std::size_t i) const;
  const std::vector<std::size_t>& parts() const { return parts_; }
  std::size_t vertex_count() const;
  /// 0-based index of the first vertex of part i (1-based i).
  std::size_t offset(std::size_t i) const;
  /// True when every part has at least two vertices, the range where the
  /// middle-factor exponents n_i - 2 are meaningful.
  bool all_parts_at_least_two() const;

  friend bool operator==(const LayeredSpec&, const LayeredSpec&) = default;
  friend auto operator<=>(const LayeredSpec&, const LayeredSpec&) = default;

 private:
  std::vector<std::size_t> parts_;
};

/// Parses "n1,n2,...,nk": positive decimals, commas, no whitespace.
LayeredSpec parse_spec(const std::string& text);
std::string to_string(const LayeredSpec& spec);

using Edge = std::pair<std::size_t, std::size_t>;

/// Undirected simple graph.  Edges are stored as (u, v) with u < v, sorted.
class Graph {
 public:
  Graph() = default;
  /// Throws DomainError on self-loops, duplicate edges, out-of-range
  /// endpoints, or (when part_of is given) an edge inside one part.
  Graph(std::size_t vertex_count, std::vector<Edge> edges,
        std::optional<std::vector<std::size_t>> part_of = std::nullopt);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::optional<std::vector<std::size_t>>& part_of() const { return part_of_; }

  std::vector<std::size_t> degrees() const;
  std::vector<std::vector<std::size_t>> adjacency() const;
  bool is_connected() const;

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::optional<std::vector<std::size_t>> part_of_;  // 0-based part indices
};

/// Vertices ordered part by part; edges exactly between consecutive parts.
Graph layered_kpartite(const LayeredSpec& spec);

/// L = D - A.
IntMatrix laplacian(const Graph& g);

/// Block-tridiagonal form: N_i I on the diagonal, -J between neighbours.
IntMatrix layered_laplacian_direct(const LayeredSpec& spec);

/// Common degree N_i of part i (1-based): n_{i-1} + n_{i+1} inside,
/// n_2 for i = 1 and n_{k-1} for i = k.
Integer n_coefficient(const LayeredSpec& spec, std::size_t i);

enum class Family { cycle, complete, complete_bipartite, path, tree_random };

/// Oracle fixtures.  params: cycle {n >= 3}, complete {n >= 1},
/// complete_bipartite {a, b}, path {n >= 1}, tree_random {n >= 1, seed}.
Graph standard_family(Family family, const std::vector<std::uint64_t>& params);
Family parse_family(const std::string& name);

/// Undirected DOT.  Layered graphs get one cluster per part and vertex
/// names p{i}_v{j} (both 1-based); other graphs use v{j}.
void write_dot(std::ostream& os, const Graph& g);
std::string to_dot(const Graph& g);

}  // namespace critgroup
