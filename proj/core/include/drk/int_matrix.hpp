#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace drk {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
///
/// Zero-sized shapes are legal (an n x 0 matrix is the generator matrix of
/// the zero lattice in Z^n) and every operation is total on them.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);
  static IntMatrix from_columns(std::size_t rows, std::span<const IntVector> columns);
  static IntMatrix column_vector(std::span<const Integer> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector column(std::size_t c) const;
  IntVector row(std::size_t r) const;

  bool is_zero() const;
  bool is_square() const noexcept { return rows_ == cols_; }
  IntMatrix transpose() const;

  // Submatrix on the given row and column index lists, in the given order.
  IntMatrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
  IntMatrix leading_columns(std::size_t k) const;
  IntMatrix trailing_columns(std::size_t from) const;
  IntMatrix leading_rows(std::size_t k) const;
  IntMatrix trailing_rows(std::size_t from) const;

  IntVector apply(std::span<const Integer> x) const;

  // In-place elementary operations. `scale` may be any integer.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_columns(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& scale);
  void add_column_multiple(std::size_t dst, std::size_t src, const Integer& scale);
  void negate_row(std::size_t r);
  void negate_column(std::size_t c);

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// [a | b]
IntMatrix hcat(const IntMatrix& a, const IntMatrix& b);
// [a ; b]
IntMatrix vcat(const IntMatrix& a, const IntMatrix& b);
// diag(a, b)
IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);

// Exact determinant by fraction-free elimination (Bareiss).
Integer determinant(const IntMatrix& a);

bool is_nonnegative(std::span<const Integer> v);
bool is_zero(std::span<const Integer> v);
std::string to_string(std::span<const Integer> v);

}  // namespace drk
