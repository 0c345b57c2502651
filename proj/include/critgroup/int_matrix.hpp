#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace critgroup {

using Integer = mpz_class;

/// Row i += factor * row j (or column i += factor * column j).
struct AddMultiple {
  std::size_t target;
  std::size_t source;
  Integer factor;
};

struct Swap {
  std::size_t a;
  std::size_t b;
};

struct Negate {
  std::size_t index;
};

/// One of the three unimodular moves used to reach Smith normal form.
using ElementaryOp = std::variant<AddMultiple, Swap, Negate>;

/*
 * Dense row-major matrix of arbitrary-precision integers.
 *
 * A value type: copies are independent and every free function below returns
 * a new matrix.  The mutating members exist for builders and for the
 * in-place elimination loops of the SNF engine and the reduction pipeline.
 * A 0x0 matrix is representable (it is the reduced Laplacian of a single
 * vertex) but mat_from_rows never produces one.
 */
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<Integer>& diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return entries_.empty(); }

  const Integer& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  Integer& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }
  /// Bounds-checked access; throws DimensionError.
  const Integer& at(std::size_t r, std::size_t c) const;
  Integer& at(std::size_t r, std::size_t c);

  const std::vector<Integer>& entries() const { return entries_; }

  // In-place elementary moves.  Indices are checked; a zero factor is
  // rejected because it is not an elementary operation.
  void apply_row_op(const ElementaryOp& op);
  void apply_col_op(const ElementaryOp& op);

  void add_row_multiple(std::size_t target, std::size_t source,
                        const Integer& factor);
  void add_col_multiple(std::size_t target, std::size_t source,
                        const Integer& factor);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  bool is_zero() const;
  bool is_diagonal() const;
  std::vector<Integer> diagonal_entries() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

IntMatrix mat_from_rows(const std::vector<std::vector<Integer>>& rows);
IntMatrix mat_from_rows(
    std::initializer_list<std::initializer_list<long>> rows);

IntMatrix elementary_row_op(const IntMatrix& m, const ElementaryOp& op);
IntMatrix elementary_col_op(const IntMatrix& m, const ElementaryOp& op);

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& m);

/// Fraction-free (Bareiss) determinant.  det of the 0x0 matrix is 1.
Integer det(const IntMatrix& m);
bool is_unimodular(const IntMatrix& m);

IntMatrix delete_row_col(const IntMatrix& m, std::size_t row, std::size_t col);
/// Principal-style extraction: the rows and columns listed, in that order.
IntMatrix submatrix(const IntMatrix& m, const std::vector<std::size_t>& rows,
                    const std::vector<std::size_t>& cols);
IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks);

/// Writes m into the block of `target` whose top-left corner is (r0, c0).
void place_block(IntMatrix& target, std::size_t r0, std::size_t c0,
                 const IntMatrix& block);

// Plain-text format: "rows cols" on the first line, then one line per row of
// single-space separated decimal integers.  write_matrix(read_matrix(s)) == s
// for any s in that canonical form.
std::string to_text(const IntMatrix& m);
IntMatrix from_text(const std::string& text);
void write_matrix(std::ostream& os, const IntMatrix& m);
IntMatrix read_matrix(std::istream& is);

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

}  // namespace critgroup
