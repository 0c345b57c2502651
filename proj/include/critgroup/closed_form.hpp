#pragma once

#include <optional>
#include <vector>

#include "critgroup/abelian_group.hpp"
#include "critgroup/graph.hpp"

namespace critgroup {

struct SigmaPair {
  Integer sigma1;
  Integer sigma2;
};

/// sigma1 = gcd(n2, n4, n2+n4, n2 n3) and
/// sigma2 = gcd(n2^2, n2 n4, n2 n3 n4, n2(n2+n4), n4(n2+n4), n2 n3(n2+n4)):
/// the gcds of the 1x1 and 2x2 minors of the 3x3 block left over by the
/// five-part reduction.  Requires k = 5.
SigmaPair sigma_pair_k5(const LayeredSpec& spec);

/// The six-part analogue, six and five gcd arguments respectively.
/// Requires k = 6.
SigmaPair sigma_pair_k6(const LayeredSpec& spec);

/// Cyclic summands of K(G) as listed by the closed form, before
/// canonicalization, plus the sigma pair when one is involved.
struct ClosedFormTerms {
  std::vector<Integer> cyclic_orders;
  std::optional<SigmaPair> sigma;
};

/// Middle factors (Z/N_i)^(n_i - 2) for i = 1..k, in part order.
std::vector<Integer> middle_factors(const LayeredSpec& spec);

/*
 * Closed-form critical group for 2 <= k <= 6 and all n_i >= 2.
 *
 *   k = 2:  middles ⊕ Z/(n1 n2)
 *   k = 3:  G_{n1,n2,n3} is K_{n1+n3, n2}; delegates to k = 2
 *   k = 4:  middles ⊕ Z/(n2 n3) ⊕ Z/(n2(n1+n3)) ⊕ Z/(n3(n2+n4))
 *   k = 5:  middles ⊕ Z/(n2(n1+n3)) ⊕ Z/(n4(n3+n5))
 *           ⊕ Z/s1 ⊕ Z/(s2/s1) ⊕ Z/(n2 n3 n4 (n2+n4) / s2)
 *   k = 6:  middles ⊕ Z/(n2(n1+n3)) ⊕ Z/(n5(n4+n6))
 *           ⊕ Z/s1 ⊕ Z/(s2/s1) ⊕ Z/(n2 n3 n4 n5 (n2+n4)(n3+n5) / s2)
 *
 * Throws DomainError outside that range; larger k has no closed form here
 * and must go through the generic SNF path.
 */
ClosedFormTerms closed_form_terms(const LayeredSpec& spec);

/// canonicalize_cyclic(closed_form_terms(spec).cyclic_orders); free rank 0.
AbelianGroup closed_form(const LayeredSpec& spec);

/// Torsion of coker(L(G)) via the generic SNF engine.  Throws DomainError
/// when g is disconnected.
AbelianGroup generic_critical_group(const Graph& g);
AbelianGroup generic_critical_group(const LayeredSpec& spec);

/// (prod_i N_i^(n_i - 1)) * (prod_{i=2}^{k-1} n_i); valid for all n_i >= 1.
Integer spanning_trees_formula(const LayeredSpec& spec);

}  // namespace critgroup
