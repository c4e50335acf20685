#include "jointslab/matrix.hpp"

#include <algorithm>

#include "jointslab/error.hpp"

namespace jointslab {

Matrix::Matrix(const Field& field, std::size_t rows, std::size_t cols)
    : field_(&field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set_raw(i, i, 1);
  return m;
}

Matrix Matrix::from_rows(const Field& field, std::span<const Vec> rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InputError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, const FieldElem& v) {
  if (&v.field() != field_) throw Error("matrix entry from a different field");
  data_[r * cols_ + c] = v.index();
}

Vec Matrix::apply(std::span<const FieldElem> v) const {
  if (v.size() != cols_) throw InputError("matrix/vector size mismatch");
  Vec out(rows_, field_->zero());
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint32_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (&v[c].field() != field_)
        throw Error("vector entry from a different field");
      acc = field_->add(acc, field_->mul(raw(r, c), v[c].index()));
    }
    out[r] = FieldElem(*field_, acc);
  }
  return out;
}

Echelon row_reduce(Matrix m) {
  const Field& f = *m.field_;
  const std::size_t rows = m.rows_, cols = m.cols_;
  auto& d = m.data_;
  std::vector<std::size_t> pivots;
  const bool prime = f.is_prime_field();
  const std::uint64_t p = f.characteristic();

  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t sel = row;
    while (sel < rows && d[sel * cols + col] == 0) ++sel;
    if (sel == rows) continue;
    if (sel != row)
      std::swap_ranges(d.begin() + sel * cols, d.begin() + (sel + 1) * cols,
                       d.begin() + row * cols);
    std::uint32_t* prow = d.data() + row * cols;
    const std::uint32_t scale = f.inv(prow[col]);
    for (std::size_t j = col; j < cols; ++j) prow[j] = f.mul(prow[j], scale);

    for (std::size_t r = 0; r < rows; ++r) {
      if (r == row) continue;
      std::uint32_t* target = d.data() + r * cols;
      const std::uint32_t factor = target[col];
      if (factor == 0) continue;
      if (prime) {
        const std::uint64_t negf = p - factor;
        for (std::size_t j = col; j < cols; ++j)
          if (prow[j])
            target[j] =
                static_cast<std::uint32_t>((target[j] + negf * prow[j]) % p);
      } else {
        for (std::size_t j = col; j < cols; ++j)
          if (prow[j]) target[j] = f.sub(target[j], f.mul(factor, prow[j]));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return Echelon{std::move(m), std::move(pivots)};
}

std::size_t Echelon::prefix_rank(std::size_t prefix) const {
  return static_cast<std::size_t>(
      std::lower_bound(pivot_cols.begin(), pivot_cols.end(), prefix) -
      pivot_cols.begin());
}

std::vector<std::size_t> Echelon::free_cols() const {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t c = 0; c < reduced.cols(); ++c) {
    if (k < pivot_cols.size() && pivot_cols[k] == c)
      ++k;
    else
      out.push_back(c);
  }
  return out;
}

Vec Echelon::kernel_vector(std::size_t free_col) const {
  const Field& f = reduced.field();
  Vec v(reduced.cols(), f.zero());
  v[free_col] = f.one();
  for (std::size_t k = 0; k < pivot_cols.size(); ++k)
    v[pivot_cols[k]] = FieldElem(f, f.neg(reduced.raw(k, free_col)));
  return v;
}

std::size_t rank(const Matrix& m) { return row_reduce(m).rank(); }

std::vector<Vec> nullspace(const Matrix& m) {
  const Echelon e = row_reduce(m);
  std::vector<Vec> basis;
  for (std::size_t c : e.free_cols()) basis.push_back(e.kernel_vector(c));
  return basis;
}

std::optional<Vec> solve(const Matrix& a, std::span<const FieldElem> b) {
  if (b.size() != a.rows()) throw InputError("right-hand side size mismatch");
  const Field& f = a.field();
  Matrix aug(f, a.rows(), a.cols() + 1);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug.set_raw(r, c, a.raw(r, c));
    aug.set(r, a.cols(), b[r]);
  }
  const Echelon e = row_reduce(std::move(aug));
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == a.cols())
    return std::nullopt;
  Vec x(a.cols(), f.zero());
  for (std::size_t k = 0; k < e.pivot_cols.size(); ++k)
    x[e.pivot_cols[k]] = e.reduced.at(k, a.cols());
  return x;
}

}  // namespace jointslab
