#include <doctest.h>

#include "critgroup/errors.hpp"
#include "critgroup/graph.hpp"
#include "critgroup/snf.hpp"
#include "test_util.hpp"

using namespace critgroup;

namespace {

// All specs with k parts and part sizes in [lo, hi].
std::vector<LayeredSpec> all_specs(std::size_t k, std::size_t lo, std::size_t hi) {
  std::vector<LayeredSpec> out;
  std::vector<std::size_t> parts(k, lo);
  for (;;) {
    out.emplace_back(parts);
    std::size_t i = k;
    while (i > 0 && parts[i - 1] == hi) parts[--i] = lo;
    if (i == 0) return out;
    ++parts[i - 1];
  }
}

void check_laplacian_shape(const IntMatrix& l) {
  for (std::size_t i = 0; i < l.rows(); ++i) {
    Integer row = 0, col = 0;
    for (std::size_t j = 0; j < l.cols(); ++j) {
      row += l(i, j);
      col += l(j, i);
      CHECK(l(i, j) == l(j, i));
    }
    CHECK(row == 0);
    CHECK(col == 0);
  }
}

}  // namespace

TEST_CASE("LayeredSpec validation and parsing") {
  CHECK_THROWS_AS(LayeredSpec({3}), DomainError);
  CHECK_THROWS_AS(LayeredSpec({2, 0}), DomainError);
  const LayeredSpec s = parse_spec("6,4,5,3,4");
  CHECK(s.k() == 5);
  CHECK(s.n(3) == 5);
  CHECK(s.vertex_count() == 22);
  CHECK(s.offset(3) == 10);
  CHECK(to_string(s) == "6,4,5,3,4");
  CHECK_THROWS_AS(s.n(0), DimensionError);
  CHECK_THROWS_AS(parse_spec("2, 3"), ParseError);
  CHECK_THROWS_AS(parse_spec("2,,3"), ParseError);
  CHECK_THROWS_AS(parse_spec("4"), ParseError);
  CHECK_THROWS_AS(parse_spec("2,0"), ParseError);
  CHECK_THROWS_AS(parse_spec("-2,3"), ParseError);
  CHECK_THROWS_AS(parse_spec(""), ParseError);
}

TEST_CASE("layered_kpartite") {
  const Graph c4 = layered_kpartite(LayeredSpec({2, 2}));
  CHECK(c4.vertex_count() == 4);
  CHECK(c4.edge_count() == 4);
  CHECK(c4.degrees() == std::vector<std::size_t>{2, 2, 2, 2});
  CHECK(invariant_factors(laplacian(c4)) ==
        invariant_factors(laplacian(standard_family(Family::cycle, {4}))));

  const Graph fig = layered_kpartite(LayeredSpec({6, 4, 5, 3, 4}));
  CHECK(fig.vertex_count() == 22);
  CHECK(fig.edge_count() == 71);
  CHECK(layered_kpartite(LayeredSpec({3, 3})).edge_count() == 9);
}

TEST_CASE("layered graphs only join consecutive parts") {
  for (std::size_t k = 2; k <= 5; ++k) {
    for (const auto& spec : all_specs(k, 1, 3)) {
      const Graph g = layered_kpartite(spec);
      REQUIRE(g.part_of());
      for (const auto& [u, v] : g.edges()) {
        const auto pu = (*g.part_of())[u], pv = (*g.part_of())[v];
        CHECK((pu + 1 == pv || pv + 1 == pu));
      }
      CHECK(g.is_connected());
    }
  }
}

TEST_CASE("Graph rejects malformed edge sets") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), DomainError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), DomainError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), DomainError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}}, std::vector<std::size_t>{0, 0, 1}), DomainError);
  CHECK_FALSE(Graph(3, {{0, 1}}).is_connected());
}

TEST_CASE("laplacian") {
  CHECK(laplacian(standard_family(Family::path, {2})) == mat_from_rows({{1, -1}, {-1, 1}}));
  const IntMatrix c4 = laplacian(standard_family(Family::cycle, {4}));
  CHECK(c4 == mat_from_rows({{2, -1, 0, -1}, {-1, 2, -1, 0}, {0, -1, 2, -1}, {-1, 0, -1, 2}}));
  CHECK(laplacian(layered_kpartite(LayeredSpec({2, 2}))) ==
        mat_from_rows({{2, 0, -1, -1}, {0, 2, -1, -1}, {-1, -1, 2, 0}, {-1, -1, 0, 2}}));
}

TEST_CASE("layered_laplacian_direct") {
  CHECK(layered_laplacian_direct(LayeredSpec({2, 2})) ==
        mat_from_rows({{2, 0, -1, -1}, {0, 2, -1, -1}, {-1, -1, 2, 0}, {-1, -1, 0, 2}}));
  CHECK(layered_laplacian_direct(LayeredSpec({1, 1})) == mat_from_rows({{1, -1}, {-1, 1}}));
  const IntMatrix l = layered_laplacian_direct(LayeredSpec({2, 3, 2}));
  CHECK(l.diagonal_entries() == testing::ints({3, 3, 4, 4, 4, 3, 3}));
}

TEST_CASE("both Laplacian builders agree on small specs") {
  std::size_t checked = 0;
  for (std::size_t k = 2; k <= 6; ++k) {
    for (const auto& spec : all_specs(k, 1, 4)) {
      if (spec.vertex_count() > 20) continue;
      const IntMatrix l = laplacian(layered_kpartite(spec));
      CHECK(l == layered_laplacian_direct(spec));
      check_laplacian_shape(l);
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("connected Laplacians have rank n - 1") {
  for (const auto& spec : all_specs(3, 1, 3)) {
    const IntMatrix l = laplacian(layered_kpartite(spec));
    CHECK(invariant_factors(l).size() == spec.vertex_count() - 1);
  }
  CHECK(invariant_factors(laplacian(standard_family(Family::complete, {5}))).size() == 4);
}

TEST_CASE("n_coefficient") {
  const LayeredSpec s({6, 4, 5, 3, 4});
  CHECK(n_coefficient(s, 3) == 7);
  CHECK(n_coefficient(s, 1) == 4);
  CHECK(n_coefficient(s, 5) == 3);
  CHECK(n_coefficient(LayeredSpec({2, 2}), 1) == 2);
  CHECK(n_coefficient(LayeredSpec({7, 3}), 2) == 7);
  CHECK_THROWS_AS(n_coefficient(s, 6), DimensionError);
}

TEST_CASE("standard families") {
  CHECK(standard_family(Family::cycle, {4}).edge_count() == 4);
  CHECK(standard_family(Family::complete, {4}).edge_count() == 6);
  CHECK(standard_family(Family::complete_bipartite, {2, 3}).edges() ==
        layered_kpartite(LayeredSpec({2, 3})).edges());
  CHECK(standard_family(Family::path, {5}).edge_count() == 4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph t = standard_family(Family::tree_random, {9, seed});
    CHECK(t.edge_count() == 8);
    CHECK(t.is_connected());
  }
  CHECK(standard_family(Family::tree_random, {9, 4}).edges() ==
        standard_family(Family::tree_random, {9, 4}).edges());
  CHECK(parse_family("path") == Family::path);
  CHECK_THROWS_AS(parse_family("petersen"), DomainError);
  CHECK_THROWS_AS(standard_family(Family::cycle, {2}), DomainError);
  CHECK_THROWS_AS(standard_family(Family::cycle, {4, 1}), DomainError);
}

TEST_CASE("DOT export") {
  const std::string dot = to_dot(layered_kpartite(LayeredSpec({2, 2})));
  CHECK(dot.find("subgraph cluster_p1") != std::string::npos);
  CHECK(dot.find("subgraph cluster_p2") != std::string::npos);
  CHECK(dot.find("p1_v1 -- p2_v1;") != std::string::npos);
  CHECK(dot.find("p1_v2 -- p2_v2;") != std::string::npos);
  const std::string edge = to_dot(layered_kpartite(LayeredSpec({1, 1})));
  CHECK(edge.find("p1_v1 -- p2_v1;") != std::string::npos);
  CHECK(to_dot(standard_family(Family::path, {2})).find("v1 -- v2;") != std::string::npos);
  CHECK(dot == to_dot(layered_kpartite(LayeredSpec({2, 2}))));
}
