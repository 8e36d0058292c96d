#pragma once

// Dense matrices over an exact field: Gauss-Jordan elimination, rank, kernel,
// inverse.  Over Q the pivot in each column is the entry of smallest bit size,
// which keeps intermediate fractions short.

#include <cstddef>
#include <span>
#include <vector>

#include "fano/errors.hpp"
#include "fano/fields.hpp"

namespace fano {

namespace detail {

template <Field K>
std::size_t pivot_cost(const K&, const element_t<K>& e) {
  if constexpr (std::same_as<K, RationalField>) {
    return mpz_sizeinbase(e.get_num_mpz_t(), 2) + mpz_sizeinbase(e.get_den_mpz_t(), 2);
  } else {
    (void)e;
    return 0;
  }
}

}  // namespace detail

template <Field K>
class DenseMatrix {
 public:
  using E = element_t<K>;

  DenseMatrix(const K& k, std::size_t rows, std::size_t cols)
      : k_(k), rows_(rows), cols_(cols), data_(rows * cols, k.zero()) {}

  DenseMatrix(const K& k, std::vector<std::vector<E>> rows) : k_(k), rows_(rows.size()), cols_(0) {
    if (!rows.empty()) cols_ = rows.front().size();
    data_.reserve(rows_ * cols_);
    for (auto& r : rows) {
      if (r.size() != cols_) fail("DimensionMismatch", "ragged matrix rows");
      for (auto& e : r) data_.push_back(std::move(e));
    }
  }

  // Matrix whose columns are the given vectors.
  static DenseMatrix from_columns(const K& k, const std::vector<std::vector<E>>& columns) {
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    DenseMatrix m(k, rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) fail("DimensionMismatch", "columns of unequal length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  static DenseMatrix identity(const K& k, std::size_t n) {
    DenseMatrix m(k, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = k.one();
    return m;
  }

  const K& field() const noexcept { return k_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  E& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const E& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<E> row(std::size_t i) const { return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_}; }
  std::vector<E> column(std::size_t j) const {
    std::vector<E> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  DenseMatrix transpose() const {
    DenseMatrix t(k_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  DenseMatrix operator*(const DenseMatrix& o) const {
    if (cols_ != o.rows_) fail("DimensionMismatch", "matrix product shape mismatch");
    DenseMatrix r(k_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t l = 0; l < cols_; ++l) {
        const E& a = (*this)(i, l);
        if (k_.is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = k_.add(r(i, j), k_.mul(a, o(l, j)));
      }
    }
    return r;
  }

  std::vector<E> apply(std::span<const E> v) const {
    if (v.size() != cols_) fail("DimensionMismatch", "matrix-vector shape mismatch");
    std::vector<E> r(rows_, k_.zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] = k_.add(r[i], k_.mul((*this)(i, j), v[j]));
    return r;
  }

  bool operator==(const DenseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  K k_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<E> data_;
};

// Reduced row echelon form in place; returns pivot columns.
template <Field K>
std::vector<std::size_t> rref_in_place(DenseMatrix<K>& m) {
  const K& k = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t best = m.rows();
    std::size_t best_cost = 0;
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (k.is_zero(m(i, c))) continue;
      std::size_t cost = detail::pivot_cost(k, m(i, c));
      if (best == m.rows() || cost < best_cost) {
        best = i;
        best_cost = cost;
        if constexpr (!std::same_as<K, RationalField>) break;
      }
    }
    if (best == m.rows()) continue;
    m.swap_rows(r, best);
    const auto inv = k.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = k.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || k.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = k.sub(m(i, j), k.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <Field K>
std::size_t rank(DenseMatrix<K> m) {
  return rref_in_place(m).size();
}

// Basis of {v : M v = 0}, one vector per free column (free entry = 1).
template <Field K>
std::vector<std::vector<element_t<K>>> kernel_basis(DenseMatrix<K> m) {
  const K& k = m.field();
  auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<element_t<K>>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<element_t<K>> v(m.cols(), k.zero());
    v[free] = k.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = k.neg(m(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <Field K>
DenseMatrix<K> inverse(const DenseMatrix<K>& m) {
  const K& k = m.field();
  if (m.rows() != m.cols()) fail("DimensionMismatch", "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  DenseMatrix<K> aug(k, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = k.one();
  }
  auto pivots = rref_in_place(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) fail("Singular", "matrix is not invertible");
  DenseMatrix<K> inv(k, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

template <Field K>
element_t<K> determinant(DenseMatrix<K> m) {
  const K& k = m.field();
  if (m.rows() != m.cols()) fail("DimensionMismatch", "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  auto det = k.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i) {
      if (!k.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    }
    if (piv == n) return k.zero();
    if (piv != c) {
      m.swap_rows(piv, c);
      det = k.neg(det);
    }
    det = k.mul(det, m(c, c));
    const auto inv = k.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (k.is_zero(m(i, c))) continue;
      const auto factor = k.mul(m(i, c), inv);
      for (std::size_t j = c; j < n; ++j) m(i, j) = k.sub(m(i, j), k.mul(factor, m(c, j)));
    }
  }
  return det;
}

// Rank of a list of vectors (as rows).
template <Field K>
std::size_t rank_of_vectors(const K& k, const std::vector<std::vector<element_t<K>>>& vs) {
  if (vs.empty()) return 0;
  return rank(DenseMatrix<K>(k, vs));
}

}  // namespace fano
