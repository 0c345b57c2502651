#include <doctest.h>

#include <algorithm>
#include <random>

#include "critgroup/abelian_group.hpp"
#include "critgroup/errors.hpp"
#include "test_util.hpp"

using namespace critgroup;
using testing::ints;

TEST_CASE("canonicalize_cyclic") {
  CHECK(canonicalize_cyclic(ints({4, 6})).torsion() == ints({2, 12}));
  CHECK(canonicalize_cyclic(ints({2, 3})).torsion() == ints({6}));
  CHECK(canonicalize_cyclic(ints({1, 5})).torsion() == ints({5}));
  CHECK(canonicalize_cyclic(ints({2, 4, 8})).torsion() == ints({2, 4, 8}));
  CHECK(canonicalize_cyclic(ints({12, 18, 8})).torsion() == ints({2, 12, 72}));
  CHECK(canonicalize_cyclic({}).is_trivial());
  const AbelianGroup with_free = canonicalize_cyclic(ints({0, 3, 1}), 1);
  CHECK(with_free.free_rank() == 2);
  CHECK(with_free.torsion() == ints({3}));
}

TEST_CASE("canonicalize_cyclic is order-insensitive and idempotent") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> d(1, 60);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Integer> orders;
    for (int i = 0; i < 6; ++i) orders.push_back(d(rng));
    const AbelianGroup g = canonicalize_cyclic(orders);
    std::shuffle(orders.begin(), orders.end(), rng);
    CHECK(canonicalize_cyclic(orders) == g);
    CHECK(canonicalize_cyclic(g.torsion()) == g);
    Integer product = 1;
    for (const auto& o : orders) product *= o;
    CHECK(group_order(g) == product);
  }
}

TEST_CASE("constructor enforces the canonical form") {
  CHECK_NOTHROW(AbelianGroup(0, ints({2, 12})));
  CHECK_THROWS_AS(AbelianGroup(0, ints({12, 2})), DomainError);
  CHECK_THROWS_AS(AbelianGroup(0, ints({1, 2})), DomainError);
  CHECK_THROWS_AS(AbelianGroup(0, ints({4, 6})), DomainError);
}

TEST_CASE("group_order") {
  CHECK(group_order(AbelianGroup(0, ints({2, 12}))) == 24);
  CHECK(group_order(AbelianGroup()) == 1);
  CHECK_THROWS_AS(group_order(AbelianGroup(1, {})), DomainError);
}

TEST_CASE("direct_sum, drop_free and printing") {
  const AbelianGroup a(1, ints({2}));
  const AbelianGroup b(0, ints({4}));
  const AbelianGroup s = direct_sum(a, b);
  CHECK(s == AbelianGroup(1, ints({2, 4})));
  CHECK(s.drop_free() == AbelianGroup(0, ints({2, 4})));
  CHECK_THROWS_AS(b.drop_free(), DomainError);
  CHECK(to_string(s) == "Z ⊕ Z/2 ⊕ Z/4");
  CHECK(to_string(AbelianGroup(2, ints({3}))) == "Z^2 ⊕ Z/3");
  CHECK(to_string(AbelianGroup()) == "0");
}
