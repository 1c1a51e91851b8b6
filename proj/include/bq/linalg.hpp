#pragma once

// Exact linear algebra over an ExactField: dense matrices for module maps and
// sparse reduced-echelon subspaces for path-space computations.
//
// Both F::value_type instantiations value-initialise to zero, which the dense
// containers rely on.

#include "bq/field.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bq {

template <ExactField F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(const F& f, std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  value_type& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  const value_type& operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::vector<value_type> column(std::size_t c) const {
    std::vector<value_type> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  void set_column(std::size_t c, const std::vector<value_type>& v) {
    assert(v.size() == rows_);
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

template <ExactField F>
Matrix<F> multiply(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in multiply");
  Matrix<F> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a(i, k);
      if (f.is_zero(aik)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!f.is_zero(b(k, j))) c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
    }
  return c;
}

template <ExactField F>
std::vector<typename F::value_type> apply(const F& f, const Matrix<F>& a,
                                          const std::vector<typename F::value_type>& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix/vector shape mismatch");
  std::vector<typename F::value_type> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (!f.is_zero(v[k]) && !f.is_zero(a(i, k))) out[i] = f.add(out[i], f.mul(a(i, k), v[k]));
  return out;
}

template <ExactField F>
Matrix<F> add(const F& f, const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch in add");
  Matrix<F> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f.add(a(i, j), b(i, j));
  return c;
}

template <ExactField F>
Matrix<F> scale(const F& f, const typename F::value_type& s, const Matrix<F>& a) {
  Matrix<F> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f.mul(s, a(i, j));
  return c;
}

template <ExactField F>
bool is_zero(const F& f, const Matrix<F>& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!f.is_zero(a(i, j))) return false;
  return true;
}

template <ExactField F>
bool is_zero(const F& f, const std::vector<typename F::value_type>& v) {
  return std::all_of(v.begin(), v.end(), [&](const auto& x) { return f.is_zero(x); });
}

template <ExactField F>
Matrix<F> transpose(const Matrix<F>& a) {
  Matrix<F> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

/// Block [a | b].
template <ExactField F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
  Matrix<F> c(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

/// Block [a ; b].
template <ExactField F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
  Matrix<F> c(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) c(a.rows() + i, j) = b(i, j);
  }
  return c;
}

template <ExactField F>
struct RowEchelon {
  Matrix<F> reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row, increasing
};

/// Reduced row echelon form by Gauss-Jordan elimination.
template <ExactField F>
RowEchelon<F> rref(const F& f, Matrix<F> a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && f.is_zero(a(sel, col))) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(row, j));
    const auto inv = f.inv(a(row, col));
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) = f.mul(a(row, j), inv);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || f.is_zero(a(r, col))) continue;
      const auto factor = a(r, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (!f.is_zero(a(row, j))) a(r, j) = f.sub(a(r, j), f.mul(factor, a(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

template <ExactField F>
std::size_t rank(const F& f, const Matrix<F>& a) {
  return rref(f, a).pivots.size();
}

/// Basis of the null space {x : a x = 0}, one basis vector per column of the result.
/// The basis vector for free column j has a 1 in position j and zeros in every
/// other free position, so coordinates of a kernel vector are read off at the
/// free positions (see kernel_free_columns).
template <ExactField F>
Matrix<F> kernel(const F& f, const Matrix<F>& a) {
  auto ech = rref(f, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!is_pivot[j]) free.push_back(j);
  Matrix<F> k(a.cols(), free.size());
  for (std::size_t c = 0; c < free.size(); ++c) {
    k(free[c], c) = f.one();
    for (std::size_t r = 0; r < ech.pivots.size(); ++r)
      k(ech.pivots[r], c) = f.neg(ech.reduced(r, free[c]));
  }
  return k;
}

template <ExactField F>
std::vector<std::size_t> kernel_free_columns(const F& f, const Matrix<F>& a) {
  auto ech = rref(f, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!is_pivot[j]) free.push_back(j);
  return free;
}

/// Some x with a x = b, or nullopt when the system is inconsistent.
template <ExactField F>
std::optional<std::vector<typename F::value_type>> solve(
    const F& f, const Matrix<F>& a, const std::vector<typename F::value_type>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs size mismatch");
  Matrix<F> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto ech = rref(f, std::move(aug));
  if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) return std::nullopt;
  std::vector<typename F::value_type> x(a.cols());
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) x[ech.pivots[r]] = ech.reduced(r, a.cols());
  return x;
}

template <ExactField F>
typename F::value_type determinant(const F& f, Matrix<F> a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of non-square matrix");
  auto det = f.one();
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && f.is_zero(a(sel, col))) ++sel;
    if (sel == n) return f.zero();
    if (sel != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(sel, j), a(col, j));
      det = f.neg(det);
    }
    det = f.mul(det, a(col, col));
    const auto inv = f.inv(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (f.is_zero(a(r, col))) continue;
      const auto factor = f.mul(a(r, col), inv);
      for (std::size_t j = col; j < n; ++j) a(r, j) = f.sub(a(r, j), f.mul(factor, a(col, j)));
    }
  }
  return det;
}

template <ExactField F>
std::optional<Matrix<F>> inverse(const F& f, const Matrix<F>& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of non-square matrix");
  auto ech = rref(f, hstack(a, Matrix<F>::identity(f, a.rows())));
  if (ech.pivots.size() < a.rows() || (a.rows() > 0 && ech.pivots[a.rows() - 1] >= a.cols()))
    return std::nullopt;
  Matrix<F> inv(a.rows(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.rows(); ++j) inv(i, j) = ech.reduced(i, a.cols() + j);
  return inv;
}

/// Columns of `a` forming a basis of its column space (the pivot columns).
template <ExactField F>
Matrix<F> column_space(const F& f, const Matrix<F>& a) {
  auto ech = rref(f, a);
  Matrix<F> out(a.rows(), ech.pivots.size());
  for (std::size_t c = 0; c < ech.pivots.size(); ++c) out.set_column(c, a.column(ech.pivots[c]));
  return out;
}

// ---------------------------------------------------------------------------
// Sparse vectors and subspaces
// ---------------------------------------------------------------------------

template <ExactField F>
using SparseVector = std::vector<std::pair<std::size_t, typename F::value_type>>;

/// a + s*b for sorted sparse vectors.
template <ExactField F>
SparseVector<F> axpy(const F& f, const SparseVector<F>& a, const typename F::value_type& s,
                     const SparseVector<F>& b) {
  SparseVector<F> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      auto v = f.mul(s, b[j].second);
      if (!f.is_zero(v)) out.emplace_back(b[j].first, std::move(v));
      ++j;
    } else {
      auto v = f.add(a[i].second, f.mul(s, b[j].second));
      if (!f.is_zero(v)) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <ExactField F>
typename F::value_type coefficient(const F& f, const SparseVector<F>& v, std::size_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const auto& e, std::size_t k) { return e.first < k; });
  return (it != v.end() && it->first == index) ? it->second : f.zero();
}

/// A subspace of K^n held as a fully reduced row-echelon basis. The pivot of a
/// row is its smallest index; callers choose the index order so that pivots
/// are the "leading" coordinates they care about.
template <ExactField F>
class Subspace {
 public:
  using value_type = typename F::value_type;
  using Vector = SparseVector<F>;

  explicit Subspace(F field) : f_(std::move(field)) {}

  std::size_t dimension() const { return rows_.size(); }
  const std::map<std::size_t, Vector>& rows() const { return rows_; }

  /// v minus its projection along the pivots; zero iff v lies in the subspace.
  Vector reduce(const Vector& v) const {
    Vector out = v;
    for (const auto& [idx, val] : v) {
      auto it = rows_.find(idx);
      if (it == rows_.end()) continue;
      // Other rows vanish at this pivot, so the coefficient is still val.
      out = axpy(f_, out, f_.neg(coefficient(f_, out, idx)), it->second);
    }
    return out;
  }

  bool contains(const Vector& v) const { return reduce(v).empty(); }

  /// Adds v; returns false when v was already in the span.
  bool insert(const Vector& v) {
    Vector r = reduce(v);
    if (r.empty()) return false;
    const std::size_t pivot = r.front().first;
    const auto inv = f_.inv(r.front().second);
    for (auto& e : r) e.second = f_.mul(e.second, inv);
    for (auto& [p, row] : rows_) {
      auto c = coefficient(f_, row, pivot);
      if (!f_.is_zero(c)) row = axpy(f_, row, f_.neg(c), r);
    }
    rows_.emplace(pivot, std::move(r));
    return true;
  }

  /// Coordinates with respect to rows() (ordered by pivot); nullopt if v is
  /// not in the subspace.
  std::optional<std::vector<value_type>> coordinates(const Vector& v) const {
    if (!contains(v)) return std::nullopt;
    std::vector<value_type> c;
    c.reserve(rows_.size());
    for (const auto& [p, row] : rows_) c.push_back(coefficient(f_, v, p));
    return c;
  }

  const F& field() const { return f_; }

 private:
  F f_;
  std::map<std::size_t, Vector> rows_;
};

/// Null space of the system whose (reduced) rows are held in `rows`, over
/// K^ncols. One basis vector per free column f, with a 1 at f.
template <ExactField F>
std::vector<SparseVector<F>> kernel_of_rows(const Subspace<F>& rows, std::size_t ncols) {
  const F& f = rows.field();
  // Column f of the reduced rows: (pivot, entry) pairs.
  std::vector<std::vector<std::pair<std::size_t, typename F::value_type>>> by_col(ncols);
  for (const auto& [p, row] : rows.rows())
    for (const auto& [c, v] : row)
      if (c != p) by_col.at(c).emplace_back(p, v);
  std::vector<SparseVector<F>> out;
  for (std::size_t c = 0; c < ncols; ++c) {
    if (rows.rows().count(c)) continue;
    SparseVector<F> v;
    for (const auto& [p, x] : by_col[c]) v.emplace_back(p, f.neg(x));
    v.emplace_back(c, f.one());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.push_back(std::move(v));
  }
  return out;
}

template <ExactField F>
SparseVector<F> to_sparse(const F& f, const std::vector<typename F::value_type>& v) {
  SparseVector<F> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!f.is_zero(v[i])) s.emplace_back(i, v[i]);
  return s;
}

template <ExactField F>
std::vector<typename F::value_type> to_dense(const SparseVector<F>& v, std::size_t n) {
  std::vector<typename F::value_type> d(n);
  for (const auto& [i, x] : v) d.at(i) = x;
  return d;
}

}  // namespace bq
