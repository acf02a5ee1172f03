#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "formring/field.hpp"

namespace formring {

using Vector = std::vector<Residue>;

// Dense row-major matrix over GF(p). A map V -> W is stored as dim W x dim V.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Vector column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  void set_column(std::size_t c, std::span<const Residue> v) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  bool is_zero() const {
    for (auto x : data_)
      if (x) return false;
    return true;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Residue> data_;
};

inline Matrix multiply(const Matrix& a, const Matrix& b, const PrimeField& F) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Residue x = a(i, k);
      if (!x) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j)) c(i, j) = F.add(c(i, j), F.mul(x, b(k, j)));
    }
  return c;
}

inline Vector apply(const Matrix& a, std::span<const Residue> v, const PrimeField& F) {
  Vector out(a.rows(), 0);
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (!v[c]) continue;
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (a(r, c)) out[r] = F.add(out[r], F.mul(a(r, c), v[c]));
  }
  return out;
}

inline bool is_zero_vector(std::span<const Residue> v) {
  for (auto x : v)
    if (x) return false;
  return true;
}

struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};

// Reduced row echelon form; pivots chosen as the first nonzero column.
inline RowEchelon row_reduce(Matrix m, const PrimeField& F) {
  RowEchelon out;
  std::size_t r = 0;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(m(piv, j), m(r, j));
    Residue inv = F.inv(m(r, c));
    for (std::size_t j = c; j < cols; ++j) m(r, j) = F.mul(m(r, j), inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      Residue f = m(i, c);
      if (!f) continue;
      for (std::size_t j = c; j < cols; ++j)
        if (m(r, j)) m(i, j) = F.sub_mul(m(i, j), f, m(r, j));
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const Matrix& m, const PrimeField& F) { return row_reduce(m, F).rank(); }

// Basis of {v : m v = 0}.
inline std::vector<Vector> kernel_basis(const Matrix& m, const PrimeField& F) {
  RowEchelon e = row_reduce(m, F);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = F.neg(e.reduced(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

// Echelonized spanning set that remembers, for each row, its expression in
// terms of tagged generators. Rows are inserted already reduced against the
// earlier ones, so reducing in insertion order never reintroduces a pivot.
class Subspace {
 public:
  Subspace(std::size_t ambient_dim, const PrimeField& F) : dim_(ambient_dim), F_(F) {}

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  // Reduces v in place; returns the multipliers used per row.
  Vector reduce(Vector& v) const {
    Vector coeff(rows_.size(), 0);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      Residue f = v[pivots_[k]];
      if (!f) continue;
      coeff[k] = f;
      const Vector& row = rows_[k];
      for (std::size_t j = pivots_[k]; j < dim_; ++j)
        if (row[j]) v[j] = F_.sub_mul(v[j], f, row[j]);
    }
    return coeff;
  }

  bool contains(Vector v) const {
    reduce(v);
    return is_zero_vector(v);
  }

  // Inserts v; when `tag` is given, the row is recorded as the generator with
  // that tag minus the combination of earlier rows. Returns false if v was
  // already in the span.
  bool insert(Vector v, std::optional<std::size_t> tag = std::nullopt) {
    Vector coeff = reduce(v);
    std::size_t piv = 0;
    while (piv < dim_ && v[piv] == 0) ++piv;
    if (piv == dim_) return false;
    Vector t;
    if (tag) {
      t.assign(*tag + 1, 0);
      t[*tag] = 1;
      for (std::size_t k = 0; k < coeff.size(); ++k) {
        if (!coeff[k]) continue;
        const Vector& tk = tags_[k];
        if (tk.size() > t.size()) t.resize(tk.size(), 0);
        for (std::size_t j = 0; j < tk.size(); ++j)
          if (tk[j]) t[j] = F_.sub_mul(t[j], coeff[k], tk[j]);
      }
    }
    Residue inv = F_.inv(v[piv]);
    for (std::size_t j = piv; j < dim_; ++j) v[j] = F_.mul(v[j], inv);
    for (auto& x : t) x = F_.mul(x, inv);
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    tags_.push_back(std::move(t));
    return true;
  }

  // Expresses v in terms of tagged generators modulo untagged ones. Returns
  // nullopt when v is outside the span.
  std::optional<Vector> tag_coordinates(Vector v, std::size_t ntags) const {
    Vector coeff = reduce(v);
    if (!is_zero_vector(v)) return std::nullopt;
    Vector out(ntags, 0);
    for (std::size_t k = 0; k < coeff.size(); ++k) {
      if (!coeff[k]) continue;
      const Vector& tk = tags_[k];
      for (std::size_t j = 0; j < tk.size() && j < ntags; ++j)
        if (tk[j]) out[j] = F_.add(out[j], F_.mul(coeff[k], tk[j]));
    }
    return out;
  }

 private:
  std::size_t dim_;
  PrimeField F_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Vector> tags_;
};

// Z / B for subspaces B ⊆ Z of an ambient space, with a chosen set of
// representatives of a basis of the quotient.
class QuotientSpace {
 public:
  QuotientSpace(std::size_t ambient_dim, const PrimeField& F) : echelon_(ambient_dim, F) {}

  QuotientSpace(std::size_t ambient_dim, const PrimeField& F, std::span<const Vector> relations,
                std::span<const Vector> generators)
      : echelon_(ambient_dim, F) {
    for (const auto& b : relations)
      if (echelon_.insert(b)) ++relation_rank_;
    for (const auto& z : generators)
      if (echelon_.insert(z, reps_.size())) reps_.push_back(z);
  }

  std::size_t dim() const { return reps_.size(); }
  std::size_t relation_rank() const { return relation_rank_; }
  const std::vector<Vector>& representatives() const { return reps_; }

  // Coordinates of the class of v; nullopt when v is not in Z.
  std::optional<Vector> coordinates(const Vector& v) const { return echelon_.tag_coordinates(v, reps_.size()); }

  bool is_zero_class(const Vector& v) const {
    auto c = coordinates(v);
    return c && is_zero_vector(*c);
  }

 private:
  Subspace echelon_;
  std::vector<Vector> reps_;
  std::size_t relation_rank_ = 0;
};

}  // namespace formring
