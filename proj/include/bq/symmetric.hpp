#pragma once

// Symmetrizing forms.
//
// A functional lambda with lambda(ab) = lambda(ba) gives a nondegenerate form
// (a, b) -> lambda(ab) iff ker(lambda) contains no nonzero right ideal, i.e.
// no simple submodule of soc(Lambda_Lambda). For a basic algebra the
// S_k-isotypic part of the socle is U_k = soc(Lambda) e_k and every nonzero
// vector of U_k spans a simple submodule. Hence a symmetrizing form exists iff
// every U_k has dimension <= 1 and no spanning vector u_k of a nonzero U_k is
// killed by all trace functionals. In that case lambda is built explicitly
// and certified by the rank of its Gram matrix.

#include "bq/algebra.hpp"
#include "bq/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bq {

template <ExactField F>
struct SymmetrizingForm {
  std::vector<typename F::value_type> values;  // lambda on each basis word
};

/// Basis (columns, in algebra coordinates) of the space of functionals
/// vanishing on all commutators b_i b_j - b_j b_i.
template <ExactField F>
std::vector<std::vector<typename F::value_type>> trace_functionals(const PresentedAlgebra<F>& A) {
  const F& f = A.field();
  const std::size_t n = A.dimension();
  Subspace<F> constraints(f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      auto c = axpy(f, A.basis_product(i, j), f.neg(f.one()), A.basis_product(j, i));
      if (!c.empty()) constraints.insert(c);
    }
  std::vector<std::vector<typename F::value_type>> out;
  for (const auto& v : kernel_of_rows(constraints, n)) out.push_back(to_dense<F>(v, n));
  return out;
}

/// Basis of soc(Lambda_Lambda): common kernel of right multiplication by arrows.
template <ExactField F>
std::vector<SparseVector<F>> right_socle(const PresentedAlgebra<F>& A) {
  const F& f = A.field();
  const std::size_t n = A.dimension();
  const Quiver& q = A.quiver();
  // Row (a, k) of the stacked system: coefficient of basis word k in u * a.
  std::map<std::pair<ArrowId, std::size_t>, SparseVector<F>> rows;
  for (std::size_t i = 0; i < n; ++i)
    for (ArrowId a : q.out_arrows(A.basis_word(i).target))
      for (const auto& [k, c] : A.times_arrow(i, a)) rows[{a, k}].emplace_back(i, c);
  Subspace<F> sys(f);
  for (auto& [key, r] : rows) sys.insert(r);
  return kernel_of_rows(sys, n);
}

template <ExactField F>
std::vector<std::vector<typename F::value_type>> gram_matrix(const PresentedAlgebra<F>& A,
                                                             const std::vector<typename F::value_type>& lambda) {
  const F& f = A.field();
  const std::size_t n = A.dimension();
  std::vector<std::vector<typename F::value_type>> g(n, std::vector<typename F::value_type>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : A.basis_product(i, j)) g[i][j] = f.add(g[i][j], f.mul(c, lambda[k]));
  return g;
}

template <ExactField F>
bool is_symmetrizing(const PresentedAlgebra<F>& A, const std::vector<typename F::value_type>& lambda) {
  const F& f = A.field();
  const auto g = gram_matrix(A, lambda);
  const std::size_t n = A.dimension();
  Matrix<F> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!f.equal(g[i][j], g[j][i])) return false;
      m(i, j) = g[i][j];
    }
  return rank(f, m) == n;
}

/// Pick c with sum_t c_t h_k(t) != 0 for every row h_k. Uses c = (1, x, x^2, ...)
/// which leaves at most (r-1) bad x per row, then falls back to exhaustive
/// search over small fields.
template <ExactField F>
std::optional<std::vector<typename F::value_type>> avoid_hyperplanes(
    const F& f, const std::vector<std::vector<typename F::value_type>>& h, std::size_t r,
    std::uint64_t exhaustive_cap = 1'000'000) {
  using T = typename F::value_type;
  auto ok = [&](const std::vector<T>& c) {
    for (const auto& row : h) {
      T s = f.zero();
      for (std::size_t t = 0; t < r; ++t) s = f.add(s, f.mul(row[t], c[t]));
      if (f.is_zero(s)) return false;
    }
    return true;
  };
  const std::uint64_t tries = h.size() * (r == 0 ? 1 : r) + 1;
  const std::uint64_t order = f.order();
  for (std::uint64_t k = 0; k < tries && (order == 0 || k < order); ++k) {
    std::vector<T> c(r);
    T x = f.element(k), pw = f.one();
    for (std::size_t t = 0; t < r; ++t) {
      c[t] = pw;
      pw = f.mul(pw, x);
    }
    if (ok(c)) return c;
  }
  if (order == 0 || order > tries) return std::nullopt;  // cannot happen: too few roots
  // Small field: exhaust K^r.
  std::uint64_t total = 1;
  for (std::size_t t = 0; t < r; ++t) {
    if (total > exhaustive_cap / order) throw std::runtime_error("symmetrizing form search exceeded cap");
    total *= order;
  }
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<T> c(r);
    std::uint64_t rest = code;
    for (std::size_t t = 0; t < r; ++t) {
      c[t] = f.element(rest % order);
      rest /= order;
    }
    if (ok(c)) return c;
  }
  return std::nullopt;
}

template <ExactField F>
std::optional<SymmetrizingForm<F>> symmetrizing_form(const PresentedAlgebra<F>& A) {
  using T = typename F::value_type;
  const F& f = A.field();
  const std::size_t n = A.dimension();
  const auto traces = trace_functionals(A);
  const auto soc = right_socle(A);

  // Isotypic parts soc * e_k.
  std::vector<std::vector<T>> hyper;  // h_k(t) = traces[t](u_k)
  for (VertexId k = 0; k < A.quiver().num_vertices(); ++k) {
    Subspace<F> part(f);
    for (const auto& v : soc) {
      SparseVector<F> proj;
      for (const auto& [idx, c] : v)
        if (A.basis_word(idx).target == k) proj.emplace_back(idx, c);
      if (!proj.empty()) part.insert(proj);
    }
    if (part.dimension() == 0) continue;
    if (part.dimension() >= 2) return std::nullopt;
    const auto& u = part.rows().begin()->second;
    std::vector<T> h(traces.size());
    bool any = false;
    for (std::size_t t = 0; t < traces.size(); ++t) {
      for (const auto& [idx, c] : u) h[t] = f.add(h[t], f.mul(c, traces[t][idx]));
      any = any || !f.is_zero(h[t]);
    }
    if (!any) return std::nullopt;
    hyper.push_back(std::move(h));
  }
  auto c = avoid_hyperplanes(f, hyper, traces.size());
  if (!c) return std::nullopt;
  SymmetrizingForm<F> form{std::vector<T>(n)};
  for (std::size_t t = 0; t < traces.size(); ++t)
    for (std::size_t i = 0; i < n; ++i)
      form.values[i] = f.add(form.values[i], f.mul((*c)[t], traces[t][i]));
  if (!is_symmetrizing(A, form.values))
    throw std::logic_error("constructed functional failed the Gram certificate");
  return form;
}

}  // namespace bq
