#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "critgroup/graph.hpp"
#include "critgroup/int_matrix.hpp"

namespace critgroup {

constexpr std::size_t kBruteForceMaxEdges = 24;
constexpr std::size_t kSpectralMaxVertices = 50;
constexpr unsigned long kSandpileMaxTrees = 5000;

/// Enumerates every (n-1)-edge subset and counts the acyclic ones.  Throws
/// DomainError on more than kBruteForceMaxEdges edges or a disconnected graph.
Integer spanning_trees_bruteforce(const Graph& g);

/// Signed cofactor of the Laplacian, evaluated at (0, 0) and at (0, 1) (or
/// (n-1, 0)) and checked to agree.  Throws DomainError when disconnected and
/// ConsistencyError when the two cofactors differ.
Integer spanning_trees_matrixtree(const Graph& g);

/// (-1)^(i+j) det of L with row i and column j deleted.
Integer signed_cofactor(const IntMatrix& l, std::size_t i, std::size_t j);

/// Product of the n-1 largest Laplacian eigenvalues over n, in double
/// precision.  Advisory only.
double spanning_trees_spectral(const Graph& g);

/// Chips on every vertex; chips[sink] is kept at zero.
struct ChipConfig {
  std::size_t sink = 0;
  std::vector<std::int64_t> chips;

  bool operator==(const ChipConfig&) const = default;
};

enum class FiringOrder { ascending, descending };

/// Fires unstable non-sink vertices (chips >= degree) until none is left.
/// A vertex holding q * deg + r chips fires q times at once.
ChipConfig stabilize(ChipConfig cfg, const Graph& g, FiringOrder order = FiringOrder::ascending);

/// Dhar's test: add one chip per sink edge to each neighbour of the sink,
/// stabilize, and compare.  Expects a stable configuration.
bool is_recurrent(const ChipConfig& cfg, const Graph& g);

/// Number of recurrent configurations, found by closing the maximal stable
/// configuration under c -> stab(c + e_v) and burning-testing every state
/// reached.  Throws DomainError if the tree count exceeds kSandpileMaxTrees
/// or the graph is disconnected.
Integer sandpile_group_order(const Graph& g, std::size_t sink);

}  // namespace critgroup
