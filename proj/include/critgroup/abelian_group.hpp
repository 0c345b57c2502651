#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "critgroup/int_matrix.hpp"

namespace critgroup {

/// Finitely generated abelian group Z^free_rank ⊕ Z/d1 ⊕ ... ⊕ Z/dm in
/// invariant-factor form: every d_i >= 2 and d_i | d_{i+1}.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  /// Throws DomainError unless `torsion` is already canonical.
  AbelianGroup(std::size_t free_rank, std::vector<Integer> torsion);

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }

  /// Same torsion with `n` fewer free summands (the Z of "Z ⊕ K(G)").
  AbelianGroup drop_free(std::size_t n = 1) const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

/// Invariant-factor form of Z/orders[0] ⊕ Z/orders[1] ⊕ ..., by pairwise
/// (gcd, lcm) replacement.  Orders equal to 1 vanish; a 0 order is a free Z.
AbelianGroup canonicalize_cyclic(const std::vector<Integer>& orders,
                                 std::size_t free_rank = 0);

/// Direct sum, canonicalized.
AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);

/// Product of the torsion; throws DomainError for infinite groups.
Integer group_order(const AbelianGroup& g);

/// "Z^2 ⊕ Z/2 ⊕ Z/12"; the trivial group prints as "0".
std::string to_string(const AbelianGroup& g);

}  // namespace critgroup
