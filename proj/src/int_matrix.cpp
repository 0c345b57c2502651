#include "critgroup/int_matrix.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "critgroup/errors.hpp"

namespace critgroup {

namespace {

std::string shape(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

void check_index(std::size_t i, std::size_t bound, const char* what) {
  if (i >= bound) {
    throw DimensionError(std::string(what) + " index " + std::to_string(i) +
                         " out of range (size " + std::to_string(bound) + ")");
  }
}

bool is_decimal_integer(const std::string& tok) {
  std::size_t i = (!tok.empty() && (tok[0] == '-' || tok[0] == '+')) ? 1 : 0;
  if (i == tok.size()) return false;
  return std::all_of(tok.begin() + static_cast<std::ptrdiff_t>(i), tok.end(),
                     [](char ch) { return ch >= '0' && ch <= '9'; });
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& diag) {
  IntMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

const Integer& IntMatrix::at(std::size_t r, std::size_t c) const {
  check_index(r, rows_, "row");
  check_index(c, cols_, "column");
  return (*this)(r, c);
}

Integer& IntMatrix::at(std::size_t r, std::size_t c) {
  check_index(r, rows_, "row");
  check_index(c, cols_, "column");
  return (*this)(r, c);
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source,
                                 const Integer& factor) {
  check_index(target, rows_, "row");
  check_index(source, rows_, "row");
  if (target == source) throw DomainError("add-multiple needs two distinct rows");
  if (factor == 0) throw DomainError("add-multiple factor must be nonzero");
  Integer* t = &entries_[target * cols_];
  const Integer* s = &entries_[source * cols_];
  for (std::size_t c = 0; c < cols_; ++c) {
    if (s[c] != 0) t[c] += factor * s[c];
  }
}

void IntMatrix::add_col_multiple(std::size_t target, std::size_t source,
                                 const Integer& factor) {
  check_index(target, cols_, "column");
  check_index(source, cols_, "column");
  if (target == source) {
    throw DomainError("add-multiple needs two distinct columns");
  }
  if (factor == 0) throw DomainError("add-multiple factor must be nonzero");
  for (std::size_t r = 0; r < rows_; ++r) {
    const Integer& s = (*this)(r, source);
    if (s != 0) (*this)(r, target) += factor * s;
  }
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  check_index(a, rows_, "row");
  check_index(b, rows_, "row");
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) {
    mpz_swap((*this)(a, c).get_mpz_t(), (*this)(b, c).get_mpz_t());
  }
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  check_index(a, cols_, "column");
  check_index(b, cols_, "column");
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) {
    mpz_swap((*this)(r, a).get_mpz_t(), (*this)(r, b).get_mpz_t());
  }
}

void IntMatrix::negate_row(std::size_t r) {
  check_index(r, rows_, "row");
  for (std::size_t c = 0; c < cols_; ++c) {
    mpz_neg((*this)(r, c).get_mpz_t(), (*this)(r, c).get_mpz_t());
  }
}

void IntMatrix::negate_col(std::size_t c) {
  check_index(c, cols_, "column");
  for (std::size_t r = 0; r < rows_; ++r) {
    mpz_neg((*this)(r, c).get_mpz_t(), (*this)(r, c).get_mpz_t());
  }
}

void IntMatrix::apply_row_op(const ElementaryOp& op) {
  std::visit(
      [this](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, AddMultiple>) {
          add_row_multiple(o.target, o.source, o.factor);
        } else if constexpr (std::is_same_v<T, Swap>) {
          swap_rows(o.a, o.b);
        } else {
          negate_row(o.index);
        }
      },
      op);
}

void IntMatrix::apply_col_op(const ElementaryOp& op) {
  std::visit(
      [this](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, AddMultiple>) {
          add_col_multiple(o.target, o.source, o.factor);
        } else if constexpr (std::is_same_v<T, Swap>) {
          swap_cols(o.a, o.b);
        } else {
          negate_col(o.index);
        }
      },
      op);
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Integer& x) { return x == 0; });
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (r != c && (*this)(r, c) != 0) return false;
    }
  }
  return true;
}

std::vector<Integer> IntMatrix::diagonal_entries() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) d.push_back((*this)(i, i));
  return d;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

IntMatrix mat_from_rows(const std::vector<std::vector<Integer>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw DimensionError("matrix needs at least one entry");
  }
  const std::size_t cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw DimensionError("ragged input: row " + std::to_string(r) + " has " +
                           std::to_string(rows[r].size()) + " entries, expected " +
                           std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix mat_from_rows(
    std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Integer>> v;
  for (const auto& row : rows) {
    v.emplace_back();
    for (long x : row) v.back().emplace_back(x);
  }
  return mat_from_rows(v);
}

IntMatrix elementary_row_op(const IntMatrix& m, const ElementaryOp& op) {
  IntMatrix out = m;
  out.apply_row_op(op);
  return out;
}

IntMatrix elementary_col_op(const IntMatrix& m, const ElementaryOp& op) {
  IntMatrix out = m;
  out.apply_col_op(op);
  return out;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("cannot multiply " + shape(a.rows(), a.cols()) + " by " +
                         shape(b.rows(), b.cols()));
  }
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Integer& bkj = b(k, j);
        if (bkj != 0) mpz_addmul(out(i, j).get_mpz_t(), aik.get_mpz_t(), bkj.get_mpz_t());
      }
    }
  }
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) { return mat_mul(a, b); }

IntMatrix transpose(const IntMatrix& m) {
  IntMatrix t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
  }
  return t;
}

Integer det(const IntMatrix& m) {
  if (!m.is_square()) {
    throw DimensionError("determinant of non-square " + shape(m.rows(), m.cols()) +
                         " matrix");
  }
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // a(i,j) = (a(k,k) a(i,j) - a(i,k) a(k,j)) / prev, exact by Sylvester.
        Integer v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  Integer d = a(n - 1, n - 1);
  return sign > 0 ? d : Integer(-d);
}

bool is_unimodular(const IntMatrix& m) {
  if (!m.is_square() || m.rows() == 0) return false;
  const Integer d = det(m);
  return d == 1 || d == -1;
}

IntMatrix delete_row_col(const IntMatrix& m, std::size_t row, std::size_t col) {
  check_index(row, m.rows(), "row");
  check_index(col, m.cols(), "column");
  IntMatrix out(m.rows() - 1, m.cols() - 1);
  for (std::size_t r = 0, orow = 0; r < m.rows(); ++r) {
    if (r == row) continue;
    for (std::size_t c = 0, ocol = 0; c < m.cols(); ++c) {
      if (c == col) continue;
      out(orow, ocol++) = m(r, c);
    }
    ++orow;
  }
  return out;
}

IntMatrix submatrix(const IntMatrix& m, const std::vector<std::size_t>& rows,
                    const std::vector<std::size_t>& cols) {
  IntMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = m.at(rows[i], cols[j]);
  }
  return out;
}

IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  IntMatrix out(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    place_block(out, r0, c0, b);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

void place_block(IntMatrix& target, std::size_t r0, std::size_t c0,
                 const IntMatrix& block) {
  if (r0 + block.rows() > target.rows() || c0 + block.cols() > target.cols()) {
    throw DimensionError("block " + shape(block.rows(), block.cols()) +
                         " does not fit at (" + std::to_string(r0) + "," +
                         std::to_string(c0) + ") of " +
                         shape(target.rows(), target.cols()));
  }
  for (std::size_t r = 0; r < block.rows(); ++r) {
    for (std::size_t c = 0; c < block.cols(); ++c) target(r0 + r, c0 + c) = block(r, c);
  }
}

void write_matrix(std::ostream& os, const IntMatrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << m(r, c).get_str();
    }
    os << '\n';
  }
}

IntMatrix read_matrix(std::istream& is) {
  std::string tok_rows, tok_cols;
  if (!(is >> tok_rows >> tok_cols)) throw ParseError("missing \"rows cols\" header");
  if (!is_decimal_integer(tok_rows) || !is_decimal_integer(tok_cols) ||
      tok_rows[0] == '-' || tok_cols[0] == '-') {
    throw ParseError("bad matrix header \"" + tok_rows + " " + tok_cols + "\"");
  }
  std::size_t rows = 0, cols = 0;
  try {
    rows = std::stoul(tok_rows);
    cols = std::stoul(tok_cols);
  } catch (const std::exception&) {
    throw ParseError("matrix header out of range");
  }
  if ((rows == 0) != (cols == 0)) throw ParseError("degenerate matrix shape");
  IntMatrix m(rows, cols);
  std::string tok;
  for (std::size_t i = 0; i < rows * cols; ++i) {
    if (!(is >> tok)) {
      throw ParseError("expected " + std::to_string(rows * cols) + " entries, got " +
                       std::to_string(i));
    }
    if (!is_decimal_integer(tok)) throw ParseError("not an integer: \"" + tok + "\"");
    if (tok[0] == '+') tok.erase(0, 1);
    m(i / cols, i % cols).set_str(tok, 10);
  }
  if (is >> tok) throw ParseError("trailing data after matrix: \"" + tok + "\"");
  return m;
}

std::string to_text(const IntMatrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

IntMatrix from_text(const std::string& text) {
  std::istringstream is(text);
  return read_matrix(is);
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  write_matrix(os, m);
  return os;
}

}  // namespace critgroup
