#include <doctest.h>

#include <random>

#include "critgroup/closed_form.hpp"
#include "critgroup/errors.hpp"
#include "critgroup/oracles.hpp"
#include "test_util.hpp"

using namespace critgroup;
using testing::ints;

namespace {

bool divides(const Integer& a, const Integer& b) {
  return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
}

}  // namespace

TEST_CASE("closed form examples") {
  const ClosedFormTerms t23 = closed_form_terms(LayeredSpec({2, 3}));
  CHECK(t23.cyclic_orders == ints({2, 6}));
  CHECK(closed_form(LayeredSpec({2, 3})).torsion() == ints({2, 6}));

  CHECK(closed_form_terms(LayeredSpec({2, 2, 2, 2})).cyclic_orders == ints({4, 8, 8}));
  CHECK(closed_form(LayeredSpec({2, 2, 2, 2})).torsion() == ints({4, 8, 8}));

  const ClosedFormTerms t5 = closed_form_terms(LayeredSpec({2, 2, 2, 2, 2}));
  CHECK(t5.cyclic_orders == ints({8, 8, 2, 2, 8}));
  REQUIRE(t5.sigma);
  CHECK(t5.sigma->sigma1 == 2);
  CHECK(t5.sigma->sigma2 == 4);
  CHECK(group_order(closed_form(LayeredSpec({2, 2, 2, 2, 2}))) == 2048);

  CHECK(closed_form(LayeredSpec({2, 2})) == AbelianGroup(0, ints({4})));
  // three parts go through the bipartite graph (n1 + n3, n2)
  CHECK(closed_form(LayeredSpec({2, 3, 2})) == closed_form(LayeredSpec({4, 3})));
}

TEST_CASE("closed form refuses outside its range") {
  CHECK_THROWS_AS(closed_form(LayeredSpec({3, 1, 3})), DomainError);
  CHECK_THROWS_AS(closed_form(LayeredSpec({2, 2, 2, 2, 2, 2, 2})), DomainError);
  CHECK_THROWS_AS(middle_factors(LayeredSpec({1, 2})), DomainError);
}

TEST_CASE("sigma pairs") {
  CHECK(sigma_pair_k5(LayeredSpec({2, 3, 5, 7, 2})).sigma1 == 1);
  CHECK(sigma_pair_k5(LayeredSpec({2, 4, 4, 4, 2})).sigma1 == 4);
  const SigmaPair six = sigma_pair_k6(LayeredSpec({2, 2, 2, 2, 2, 2}));
  CHECK(six.sigma1 == 4);
  CHECK(six.sigma2 == 32);
  for (std::size_t m = 2; m <= 7; ++m) {
    CHECK(sigma_pair_k6(LayeredSpec({3, m, m, m, m, 5})).sigma1 == m * m);
  }
  CHECK_THROWS_AS(sigma_pair_k5(LayeredSpec({2, 2, 2, 2})), DomainError);
  CHECK_THROWS_AS(sigma_pair_k6(LayeredSpec({2, 2, 2, 2, 2})), DomainError);
}

TEST_CASE("sigma divisibility chains on random specs") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> d(2, 12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::size_t> p5(5), p6(6);
    for (auto& x : p5) x = d(rng);
    for (auto& x : p6) x = d(rng);
    const LayeredSpec s5(p5), s6(p6);
    const SigmaPair a = sigma_pair_k5(s5);
    const Integer n2 = p5[1], n3 = p5[2], n4 = p5[3];
    CHECK(divides(a.sigma1, a.sigma2));
    CHECK(divides(a.sigma2, n2 * n3 * n4 * (n2 + n4)));
    const SigmaPair b = sigma_pair_k6(s6);
    const Integer m2 = p6[1], m3 = p6[2], m4 = p6[3], m5 = p6[4];
    CHECK(divides(b.sigma1, b.sigma2));
    CHECK(divides(b.sigma2, m2 * m3 * m4 * m5 * (m2 + m4) * (m3 + m5)));
    CHECK_NOTHROW(closed_form(s5));
    CHECK_NOTHROW(closed_form(s6));
  }
}

TEST_CASE("spanning_trees_formula") {
  CHECK(spanning_trees_formula(LayeredSpec({2, 3})) == 12);
  CHECK(spanning_trees_formula(LayeredSpec({2, 2, 2, 2})) == 256);
  CHECK(spanning_trees_formula(LayeredSpec({1, 1})) == 1);
  CHECK(spanning_trees_formula(LayeredSpec({2, 2, 2})) == 32);
  for (const auto& parts : {testing::sizes_of({1, 3, 2}), testing::sizes_of({4, 1, 1, 2}),
                            testing::sizes_of({2, 3, 4, 3, 2})}) {
    const LayeredSpec s(parts);
    CHECK(spanning_trees_formula(s) == spanning_trees_matrixtree(layered_kpartite(s)));
  }
}

TEST_CASE("closed form agrees with generic SNF on k = 3 and random k = 5, 6 specs") {
  for (std::size_t a = 2; a <= 4; ++a) {
    for (std::size_t b = 2; b <= 4; ++b) {
      for (std::size_t c = 2; c <= 4; ++c) {
        const LayeredSpec s({a, b, c});
        CHECK(closed_form(s) == generic_critical_group(s));
      }
    }
  }
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<std::size_t> d(2, 6);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::size_t> parts(trial % 2 ? 5 : 6);
    for (auto& x : parts) x = d(rng);
    const LayeredSpec s(parts);
    CHECK_MESSAGE(closed_form(s) == generic_critical_group(s), to_string(s));
  }
}

TEST_CASE("generic critical group needs a connected graph") {
  CHECK_THROWS_AS(generic_critical_group(Graph(3, {{0, 1}})), DomainError);
  CHECK(generic_critical_group(standard_family(Family::complete, {4})) ==
        AbelianGroup(0, ints({4, 4})));
}
