#include <doctest.h>

#include <cmath>
#include <random>

#include "critgroup/closed_form.hpp"
#include "critgroup/errors.hpp"
#include "critgroup/oracles.hpp"
#include "test_util.hpp"

using namespace critgroup;

namespace {

Graph single_edge() { return standard_family(Family::path, {2}); }
Graph c4() { return standard_family(Family::cycle, {4}); }

std::vector<Graph> fixtures() {
  return {single_edge(),
          c4(),
          standard_family(Family::complete, {4}),
          standard_family(Family::path, {6}),
          standard_family(Family::cycle, {7}),
          layered_kpartite(LayeredSpec({2, 2})),
          layered_kpartite(LayeredSpec({2, 3})),
          layered_kpartite(LayeredSpec({3, 3})),
          layered_kpartite(LayeredSpec({2, 2, 2})),
          standard_family(Family::tree_random, {8, 1}),
          standard_family(Family::tree_random, {10, 2})};
}

}  // namespace

TEST_CASE("brute-force spanning trees") {
  CHECK(spanning_trees_bruteforce(c4()) == 4);
  CHECK(spanning_trees_bruteforce(standard_family(Family::complete, {4})) == 16);
  CHECK(spanning_trees_bruteforce(layered_kpartite(LayeredSpec({2, 3}))) == 12);
  CHECK(spanning_trees_bruteforce(Graph(1, {})) == 1);
  CHECK_THROWS_AS(spanning_trees_bruteforce(Graph(3, {{0, 1}})), DomainError);
  // K_{5,5} has 25 edges
  CHECK_THROWS_AS(spanning_trees_bruteforce(layered_kpartite(LayeredSpec({5, 5}))), DomainError);
}

TEST_CASE("matrix-tree") {
  CHECK(spanning_trees_matrixtree(single_edge()) == 1);
  CHECK(spanning_trees_matrixtree(c4()) == 4);
  const IntMatrix l = laplacian(c4());
  CHECK(signed_cofactor(l, 0, 0) == 4);
  CHECK(det(delete_row_col(l, 0, 1)) == -4);
  CHECK(signed_cofactor(l, 0, 1) == 4);
  CHECK_THROWS_AS(spanning_trees_matrixtree(Graph(4, {{0, 1}, {2, 3}})), DomainError);
}

TEST_CASE("spectral count") {
  CHECK(spanning_trees_spectral(single_edge()) == doctest::Approx(1.0));
  CHECK(spanning_trees_spectral(c4()) == doctest::Approx(4.0));
  CHECK(std::abs(spanning_trees_spectral(layered_kpartite(LayeredSpec({2, 3}))) - 12.0) < 1e-5);
}

TEST_CASE("three-way agreement on the fixtures") {
  for (const Graph& g : fixtures()) {
    const Integer exact = spanning_trees_matrixtree(g);
    CHECK(spanning_trees_bruteforce(g) == exact);
    const double approx = spanning_trees_spectral(g);
    CHECK(std::abs(approx - exact.get_d()) <= 1e-6 * exact.get_d());
  }
}

TEST_CASE("stabilize") {
  const Graph e = single_edge();
  CHECK(stabilize(ChipConfig{0, {0, 0}}, e) == ChipConfig{0, {0, 0}});
  CHECK(stabilize(ChipConfig{0, {0, 1}}, e) == ChipConfig{0, {0, 0}});

  const ChipConfig s = stabilize(ChipConfig{0, {0, 3, 0, 0}}, c4());
  for (std::size_t v = 1; v < 4; ++v) CHECK(s.chips[v] < 2);
  CHECK(s.chips[0] == 0);
  CHECK_THROWS_AS(stabilize(ChipConfig{0, {0, 1}}, c4()), DimensionError);
}

TEST_CASE("stabilization does not depend on the firing order") {
  std::mt19937_64 rng(41);
  const std::vector<Graph> graphs{c4(), standard_family(Family::complete, {4}),
                                  layered_kpartite(LayeredSpec({2, 3})),
                                  layered_kpartite(LayeredSpec({2, 2, 2})),
                                  standard_family(Family::tree_random, {7, 3})};
  for (const Graph& g : graphs) {
    std::uniform_int_distribution<std::int64_t> d(0, 12);
    for (int trial = 0; trial < 100; ++trial) {
      ChipConfig c{trial % g.vertex_count(), std::vector<std::int64_t>(g.vertex_count())};
      for (auto& x : c.chips) x = d(rng);
      CHECK(stabilize(c, g, FiringOrder::ascending) == stabilize(c, g, FiringOrder::descending));
    }
  }
}

TEST_CASE("burning test") {
  // on C4 with sink 0 the configuration (1, 1, 1) is recurrent, (0, 0, 0) is not
  CHECK(is_recurrent(ChipConfig{0, {0, 1, 1, 1}}, c4()));
  CHECK_FALSE(is_recurrent(ChipConfig{0, {0, 0, 0, 0}}, c4()));
}

TEST_CASE("sandpile group order") {
  CHECK(sandpile_group_order(single_edge(), 0) == 1);
  CHECK(sandpile_group_order(c4(), 0) == 4);
  CHECK(sandpile_group_order(c4(), 2) == 4);
  CHECK(sandpile_group_order(layered_kpartite(LayeredSpec({2, 2, 2})), 0) ==
        spanning_trees_formula(LayeredSpec({2, 2, 2})));
  for (const Graph& g : fixtures()) {
    const Integer order = group_order(generic_critical_group(g));
    CHECK(sandpile_group_order(g, 0) == order);
    CHECK(sandpile_group_order(g, g.vertex_count() - 1) == order);
  }
  CHECK_THROWS_AS(sandpile_group_order(layered_kpartite(LayeredSpec({4, 5})), 0), DomainError);
  CHECK_THROWS_AS(sandpile_group_order(c4(), 4), DimensionError);
}
