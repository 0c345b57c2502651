#include "critgroup/abelian_group.hpp"

#include <algorithm>

#include "critgroup/errors.hpp"

namespace critgroup {

AbelianGroup::AbelianGroup(std::size_t free_rank, std::vector<Integer> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) {
      throw DomainError("torsion factor " + torsion_[i].get_str() + " is not >= 2");
    }
    if (i > 0 && !mpz_divisible_p(torsion_[i].get_mpz_t(), torsion_[i - 1].get_mpz_t())) {
      throw DomainError("torsion factors " + torsion_[i - 1].get_str() + ", " +
                        torsion_[i].get_str() + " break the divisibility chain");
    }
  }
}

AbelianGroup AbelianGroup::drop_free(std::size_t n) const {
  if (n > free_rank_) throw DomainError("not enough free summands to drop");
  return AbelianGroup(free_rank_ - n, torsion_);
}

AbelianGroup canonicalize_cyclic(const std::vector<Integer>& orders,
                                 std::size_t free_rank) {
  std::vector<Integer> v;
  for (const auto& o : orders) {
    if (o < 0) throw DomainError("negative cyclic order " + o.get_str());
    if (o == 0) {
      ++free_rank;
    } else if (o != 1) {
      v.push_back(o);
    }
  }
  // Z/a ⊕ Z/b ≅ Z/gcd ⊕ Z/lcm.  Repeat until v[i] | v[j] for all i < j.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (mpz_divisible_p(v[j].get_mpz_t(), v[i].get_mpz_t())) continue;
        Integer g, l;
        mpz_gcd(g.get_mpz_t(), v[i].get_mpz_t(), v[j].get_mpz_t());
        mpz_lcm(l.get_mpz_t(), v[i].get_mpz_t(), v[j].get_mpz_t());
        v[i] = g;
        v[j] = l;
        changed = true;
      }
    }
  }
  std::erase_if(v, [](const Integer& x) { return x == 1; });
  return AbelianGroup(free_rank, std::move(v));
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<Integer> orders = a.torsion();
  orders.insert(orders.end(), b.torsion().begin(), b.torsion().end());
  return canonicalize_cyclic(orders, a.free_rank() + b.free_rank());
}

Integer group_order(const AbelianGroup& g) {
  if (!g.is_finite()) {
    throw DomainError("group with free rank " + std::to_string(g.free_rank()) +
                      " is infinite");
  }
  Integer order = 1;
  for (const auto& d : g.torsion()) order *= d;
  return order;
}

std::string to_string(const AbelianGroup& g) {
  std::vector<std::string> parts;
  if (g.free_rank() == 1) {
    parts.emplace_back("Z");
  } else if (g.free_rank() > 1) {
    parts.push_back("Z^" + std::to_string(g.free_rank()));
  }
  for (const auto& d : g.torsion()) parts.push_back("Z/" + d.get_str());
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " ⊕ " + parts[i];
  return out;
}

}  // namespace critgroup
