#include "critgroup/closed_form.hpp"

#include "critgroup/errors.hpp"
#include "critgroup/snf.hpp"

namespace critgroup {

namespace {

Integer gcd_of(std::initializer_list<Integer> values) {
  Integer g = 0;
  for (const auto& v : values) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  return g;
}

// 1-based part sizes as Integers.
std::vector<Integer> sizes(const LayeredSpec& spec) {
  std::vector<Integer> n{Integer(0)};
  for (std::size_t x : spec.parts()) n.emplace_back(static_cast<unsigned long>(x));
  return n;
}

void require_k(const LayeredSpec& spec, std::size_t k) {
  if (spec.k() != k) {
    throw DomainError("expected a " + std::to_string(k) + "-part spec, got k = " +
                      std::to_string(spec.k()));
  }
}

Integer exact_quotient(const Integer& num, const Integer& den, const char* what) {
  if (den == 0 || !mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
    throw ConsistencyError(std::string(what) + ": " + den.get_str() +
                           " does not divide " + num.get_str());
  }
  Integer q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

}  // namespace

SigmaPair sigma_pair_k5(const LayeredSpec& spec) {
  require_k(spec, 5);
  const auto n = sizes(spec);
  const Integer s24 = n[2] + n[4];
  SigmaPair s{gcd_of({n[2], n[4], s24, n[2] * n[3]}),
              gcd_of({n[2] * n[2], n[2] * n[4], n[2] * n[3] * n[4], n[2] * s24,
                      n[4] * s24, n[2] * n[3] * s24})};
  return s;
}

SigmaPair sigma_pair_k6(const LayeredSpec& spec) {
  require_k(spec, 6);
  const auto n = sizes(spec);
  const Integer s24 = n[2] + n[4];
  const Integer s35 = n[3] + n[5];
  SigmaPair s{gcd_of({n[2] * n[3], n[2] * n[5], n[3] * s24, n[5] * s24, n[2] * s35,
                      n[4] * s35}),
              gcd_of({n[2] * n[3] * n[3] * s24, n[2] * n[3] * n[5] * s24,
                      n[2] * n[3] * s24 * s35, n[2] * n[2] * n[5] * s35,
                      n[5] * s24 * s24 * s35})};
  return s;
}

std::vector<Integer> middle_factors(const LayeredSpec& spec) {
  std::vector<Integer> out;
  for (std::size_t i = 1; i <= spec.k(); ++i) {
    if (spec.n(i) < 2) {
      throw DomainError("part " + std::to_string(i) + " has fewer than two vertices");
    }
    const Integer ni = n_coefficient(spec, i);
    for (std::size_t r = 2; r < spec.n(i); ++r) out.push_back(ni);
  }
  return out;
}

ClosedFormTerms closed_form_terms(const LayeredSpec& spec) {
  if (spec.k() > 6) {
    throw DomainError("no closed form for k = " + std::to_string(spec.k()) +
                      "; use the generic SNF path");
  }
  if (!spec.all_parts_at_least_two()) {
    throw DomainError("closed form requires every part to have at least two vertices");
  }
  if (spec.k() == 3) {
    return closed_form_terms(LayeredSpec({spec.n(1) + spec.n(3), spec.n(2)}));
  }

  ClosedFormTerms t{middle_factors(spec), std::nullopt};
  auto& out = t.cyclic_orders;
  const auto n = sizes(spec);
  switch (spec.k()) {
    case 2:
      out.push_back(n[1] * n[2]);
      break;
    case 4:
      out.push_back(n[2] * n[3]);
      out.push_back(n[2] * (n[1] + n[3]));
      out.push_back(n[3] * (n[2] + n[4]));
      break;
    case 5: {
      const SigmaPair s = sigma_pair_k5(spec);
      out.push_back(n[2] * (n[1] + n[3]));
      out.push_back(n[4] * (n[3] + n[5]));
      out.push_back(s.sigma1);
      out.push_back(exact_quotient(s.sigma2, s.sigma1, "sigma1 | sigma2"));
      out.push_back(exact_quotient(n[2] * n[3] * n[4] * (n[2] + n[4]), s.sigma2,
                                   "sigma2 | n2 n3 n4 (n2+n4)"));
      t.sigma = s;
      break;
    }
    case 6: {
      const SigmaPair s = sigma_pair_k6(spec);
      out.push_back(n[2] * (n[1] + n[3]));
      out.push_back(n[5] * (n[4] + n[6]));
      out.push_back(s.sigma1);
      out.push_back(exact_quotient(s.sigma2, s.sigma1, "sigma1 | sigma2"));
      out.push_back(exact_quotient(n[2] * n[3] * n[4] * n[5] * (n[2] + n[4]) * (n[3] + n[5]),
                                   s.sigma2, "sigma2 | n2 n3 n4 n5 (n2+n4)(n3+n5)"));
      t.sigma = s;
      break;
    }
    default:
      break;
  }
  return t;
}

AbelianGroup closed_form(const LayeredSpec& spec) {
  return canonicalize_cyclic(closed_form_terms(spec).cyclic_orders);
}

AbelianGroup generic_critical_group(const Graph& g) {
  if (!g.is_connected()) throw DomainError("critical group needs a connected graph");
  return cokernel(laplacian(g)).drop_free(1);
}

AbelianGroup generic_critical_group(const LayeredSpec& spec) {
  return generic_critical_group(layered_kpartite(spec));
}

Integer spanning_trees_formula(const LayeredSpec& spec) {
  Integer count = 1;
  for (std::size_t i = 1; i <= spec.k(); ++i) {
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), n_coefficient(spec, i).get_mpz_t(), spec.n(i) - 1);
    count *= p;
  }
  for (std::size_t i = 2; i < spec.k(); ++i) count *= static_cast<unsigned long>(spec.n(i));
  return count;
}

}  // namespace critgroup
