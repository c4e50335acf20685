#pragma once

// Dense matrices over a finite field with exact Gauss-Jordan elimination.
// Pivoting takes the first nonzero entry scanning columns left to right, so
// the pivot set of any column prefix is the pivot set of that prefix alone.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "jointslab/field.hpp"

namespace jointslab {

using Vec = std::vector<FieldElem>;

struct Echelon;

class Matrix {
 public:
  Matrix(const Field& field, std::size_t rows, std::size_t cols);

  static Matrix identity(const Field& field, std::size_t n);
  // All rows must have equal length and share `field`.
  static Matrix from_rows(const Field& field, std::span<const Vec> rows);

  const Field& field() const { return *field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  FieldElem at(std::size_t r, std::size_t c) const {
    return {*field_, data_[r * cols_ + c]};
  }
  void set(std::size_t r, std::size_t c, const FieldElem& v);

  // Packed-index access for hot loops.
  std::uint32_t raw(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  void set_raw(std::size_t r, std::size_t c, std::uint32_t v) {
    data_[r * cols_ + c] = v;
  }

  // M * v
  Vec apply(std::span<const FieldElem> v) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.data_ == b.data_;
  }

 private:
  friend Echelon row_reduce(Matrix m);

  const Field* field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> data_;
};

// Reduced row echelon form. Row k of `reduced` has its leading one in column
// pivot_cols[k]; rows past pivot_cols.size() are zero.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;

  std::size_t rank() const { return pivot_cols.size(); }
  // Rank of the submatrix formed by the first `prefix` columns.
  std::size_t prefix_rank(std::size_t prefix) const;
  // Columns that carry no pivot, ascending.
  std::vector<std::size_t> free_cols() const;
  // Nullspace vector with a one in free column `free_col` and zeros in every
  // other free column.
  Vec kernel_vector(std::size_t free_col) const;
};

Echelon row_reduce(Matrix m);

std::size_t rank(const Matrix& m);

// Basis of {v : M v = 0}, one vector per free column in ascending order.
std::vector<Vec> nullspace(const Matrix& m);

// Some x with A x = b, or nullopt when the system is inconsistent.
std::optional<Vec> solve(const Matrix& a, std::span<const FieldElem> b);

}  // namespace jointslab
