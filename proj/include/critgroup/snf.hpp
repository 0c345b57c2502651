#pragma once

#include <cstddef>
#include <vector>

#include "critgroup/abelian_group.hpp"
#include "critgroup/int_matrix.hpp"

namespace critgroup {

/// Smith normal form certificate: left * A * right == diagonal.
struct SnfResult {
  IntMatrix diagonal;
  IntMatrix left;   // P, unimodular, rows x rows
  IntMatrix right;  // Q, unimodular, cols x cols
  std::vector<Integer> factors;  // nonzero diagonal, d1 | d2 | ...

  std::size_t rank() const { return factors.size(); }
};

/*
 * Smith normal form by minimal-pivot elimination.
 *
 * The entry of least absolute value in the trailing block is moved to the
 * pivot; its row and column are cleared with division-with-remainder moves,
 * re-pivoting whenever a smaller remainder appears.  If the cleared pivot
 * fails to divide some entry of the remaining block, that row is added to the
 * pivot row and the block restarts, so on exit d_i | d_{i+1} throughout.
 * Only the three elementary moves are used, and each one is mirrored on the
 * identity-seeded P or Q, so the returned transforms certify the result.
 */
SnfResult smith_normal_form(const IntMatrix& a);

std::vector<Integer> invariant_factors(const IntMatrix& a);

/// Z^cols / (row space of a): free rank cols - rank, torsion = factors > 1.
/// For the symmetric matrices used here row and column conventions agree.
AbelianGroup cokernel(const IntMatrix& a);

/// Largest dimension accepted by snf_naive_oracle.
inline constexpr std::size_t kNaiveOracleMaxDim = 8;

/// Invariant factors from determinantal divisors: d_i = g_i / g_{i-1} where
/// g_i is the gcd of all i x i minors.  Independent of smith_normal_form;
/// throws DomainError above kNaiveOracleMaxDim in either dimension.
std::vector<Integer> snf_naive_oracle(const IntMatrix& a);

}  // namespace critgroup
