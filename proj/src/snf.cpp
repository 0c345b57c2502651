#include "critgroup/snf.hpp"

#include <cmath>
#include <numeric>
#include <optional>

#include "critgroup/errors.hpp"

namespace critgroup {

namespace {

bool less_abs(const Integer& x, const Integer& y) {
  return mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t()) < 0;
}

// Working state: every move on `a` is mirrored on the accumulators so that
// left * input * right == a holds after each step.
struct Reducer {
  IntMatrix a;
  IntMatrix left;
  IntMatrix right;

  explicit Reducer(const IntMatrix& input)
      : a(input),
        left(IntMatrix::identity(input.rows())),
        right(IntMatrix::identity(input.cols())) {}

  void add_row(std::size_t target, std::size_t source, const Integer& f) {
    a.add_row_multiple(target, source, f);
    left.add_row_multiple(target, source, f);
  }
  void add_col(std::size_t target, std::size_t source, const Integer& f) {
    a.add_col_multiple(target, source, f);
    right.add_col_multiple(target, source, f);
  }
  void swap_rows(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    left.swap_rows(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    right.swap_cols(i, j);
  }
  void negate_row(std::size_t i) {
    a.negate_row(i);
    left.negate_row(i);
  }

  std::optional<std::pair<std::size_t, std::size_t>> smallest_in_block(
      std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < a.rows(); ++i) {
      for (std::size_t j = t; j < a.cols(); ++j) {
        const Integer& x = a(i, j);
        if (x == 0) continue;
        if (!best || less_abs(x, a(best->first, best->second))) best = {{i, j}};
        if (mpz_cmpabs_ui(x.get_mpz_t(), 1) == 0) return best;
      }
    }
    return best;
  }

  // Clears column t below and row t right of the pivot; returns false if a
  // nonzero remainder is left somewhere in that cross.
  bool clear_cross(std::size_t t) {
    const Integer pivot = a(t, t);
    bool clean = true;
    Integer q;
    for (std::size_t i = t + 1; i < a.rows(); ++i) {
      if (a(i, t) == 0) continue;
      mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), pivot.get_mpz_t());
      if (q != 0) add_row(i, t, -q);
      if (a(i, t) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < a.cols(); ++j) {
      if (a(t, j) == 0) continue;
      mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), pivot.get_mpz_t());
      if (q != 0) add_col(j, t, -q);
      if (a(t, j) != 0) clean = false;
    }
    return clean;
  }

  // Moves the smallest nonzero remainder of the cross onto the pivot.
  void repivot_from_cross(std::size_t t) {
    std::size_t bi = t, bj = t;
    for (std::size_t i = t + 1; i < a.rows(); ++i) {
      if (a(i, t) != 0 && less_abs(a(i, t), a(bi, bj))) {
        bi = i;
        bj = t;
      }
    }
    for (std::size_t j = t + 1; j < a.cols(); ++j) {
      if (a(t, j) != 0 && less_abs(a(t, j), a(bi, bj))) {
        bi = t;
        bj = j;
      }
    }
    swap_rows(t, bi);
    swap_cols(t, bj);
  }

  std::optional<std::size_t> row_not_divisible(std::size_t t) const {
    const Integer& pivot = a(t, t);
    for (std::size_t i = t + 1; i < a.rows(); ++i) {
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(i, j) != 0 && !mpz_divisible_p(a(i, j).get_mpz_t(), pivot.get_mpz_t())) {
          return i;
        }
      }
    }
    return std::nullopt;
  }

  void run() {
    const std::size_t limit = std::min(a.rows(), a.cols());
    for (std::size_t t = 0; t < limit; ++t) {
      auto start = smallest_in_block(t);
      if (!start) break;
      swap_rows(t, start->first);
      swap_cols(t, start->second);
      for (;;) {
        if (!clear_cross(t)) {
          repivot_from_cross(t);
          continue;
        }
        if (auto bad = row_not_divisible(t)) {
          add_row(t, *bad, 1);
          continue;
        }
        break;
      }
      if (a(t, t) < 0) negate_row(t);
    }
  }
};

bool chain_holds(const std::vector<Integer>& f) {
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (!mpz_divisible_p(f[i].get_mpz_t(), f[i - 1].get_mpz_t())) return false;
  }
  return true;
}

// --- determinantal-divisor oracle -------------------------------------------

// Bareiss on 128-bit integers; only called when the Hadamard bound of the
// whole matrix is below 2^62, so every intermediate (a minor, or a product of
// two minors before the exact division) fits.
__int128 small_det(std::vector<__int128> m, std::size_t n) {
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m[k * n + c], m[p * n + c]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i * n + j] = (m[k * n + k] * m[i * n + j] - m[i * n + k] * m[k * n + j]) / prev;
      }
    }
    prev = m[k * n + k];
  }
  return sign * m[n * n - 1];
}

Integer to_integer(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer lo(static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL));
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& a) {
  Reducer r(a);
  r.run();
  SnfResult out{r.a, r.left, r.right, {}};
  for (const auto& d : out.diagonal.diagonal_entries()) {
    if (d != 0) out.factors.push_back(d);
  }
  if (!chain_holds(out.factors)) {
    throw ConsistencyError("SNF diagonal violates the divisibility chain");
  }
  return out;
}

std::vector<Integer> invariant_factors(const IntMatrix& a) {
  return smith_normal_form(a).factors;
}

AbelianGroup cokernel(const IntMatrix& a) {
  const auto factors = invariant_factors(a);
  return canonicalize_cyclic(factors, a.cols() - factors.size());
}

std::vector<Integer> snf_naive_oracle(const IntMatrix& a) {
  if (a.rows() > kNaiveOracleMaxDim || a.cols() > kNaiveOracleMaxDim) {
    throw DomainError("determinantal-divisor oracle limited to " +
                      std::to_string(kNaiveOracleMaxDim) + "x" +
                      std::to_string(kNaiveOracleMaxDim));
  }
  double log2_bound = 0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double s = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) s += std::pow(a(r, c).get_d(), 2);
    if (s > 0) log2_bound += 0.5 * std::log2(s);
  }
  const bool small = log2_bound < 62;

  auto minor = [&](const std::vector<std::size_t>& rows,
                   const std::vector<std::size_t>& cols) -> Integer {
    const std::size_t n = rows.size();
    if (small) {
      std::vector<__int128> m(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] = a(rows[i], cols[j]).get_si();
      }
      return to_integer(small_det(std::move(m), n));
    }
    return det(submatrix(a, rows, cols));
  };

  std::vector<Integer> factors;
  Integer prev_g = 1;
  const std::size_t limit = std::min(a.rows(), a.cols());
  for (std::size_t k = 1; k <= limit; ++k) {
    Integer g = 0;
    std::vector<std::size_t> rows(k);
    std::iota(rows.begin(), rows.end(), 0);
    bool done = false;
    do {
      std::vector<std::size_t> cols(k);
      std::iota(cols.begin(), cols.end(), 0);
      do {
        const Integer m = minor(rows, cols);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
        // g_k is a multiple of g_{k-1}; reaching it ends the search.
        if (g != 0 && g == prev_g) done = true;
      } while (!done && next_combination(cols, a.cols()));
    } while (!done && next_combination(rows, a.rows()));
    if (g == 0) break;
    factors.push_back(g / prev_g);
    prev_g = g;
  }
  return factors;
}

}  // namespace critgroup
