#pragma once

// Finite-dimensional right modules over a presented algebra.
//
// A module is a representation of the quiver: a vector space M_v = M e_v per
// vertex and, for each arrow a: s -> t, a matrix of shape dim M_t x dim M_s.
// Elements are column vectors, so m * (a1 a2) is A_{a2} A_{a1} m.

#include "bq/algebra.hpp"
#include "bq/linalg.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace bq {

template <ExactField F>
class RightModule {
 public:
  using value_type = typename F::value_type;
  using Column = std::vector<value_type>;

  RightModule() = default;
  RightModule(std::shared_ptr<const Quiver> q, F field, std::vector<std::size_t> dims)
      : quiver_(std::move(q)), field_(std::move(field)), dims_(std::move(dims)) {
    if (dims_.size() != quiver_->num_vertices())
      throw std::invalid_argument("dimension vector has wrong length");
    action_.reserve(quiver_->num_arrows());
    for (const auto& a : quiver_->arrows()) action_.emplace_back(dims_[a.target], dims_[a.source]);
  }

  const Quiver& quiver() const { return *quiver_; }
  std::shared_ptr<const Quiver> quiver_ptr() const { return quiver_; }
  const F& field() const { return field_; }

  const std::vector<std::size_t>& dimension_vector() const { return dims_; }
  std::size_t dim(VertexId v) const { return dims_.at(v); }
  std::size_t total_dimension() const { return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0}); }
  bool is_zero() const { return total_dimension() == 0; }

  const Matrix<F>& action(ArrowId a) const { return action_.at(a); }
  void set_action(ArrowId a, Matrix<F> m) {
    const auto& arr = quiver_->arrow(a);
    if (m.rows() != dims_[arr.target] || m.cols() != dims_[arr.source])
      throw std::invalid_argument("action matrix has wrong shape for arrow " + arr.name);
    action_[a] = std::move(m);
  }

  /// Matrix of right multiplication by a path (dim M_target x dim M_source).
  Matrix<F> path_action(const PathWord& p) const {
    Matrix<F> m = Matrix<F>::identity(field_, dims_.at(p.source));
    for (ArrowId a : p.arrows) m = multiply(field_, action_[a], m);
    return m;
  }

  /// Matrix of right multiplication by an element.
  Matrix<F> element_action(const AlgebraElement<F>& x) const {
    Matrix<F> m(dims_.at(x.target()), dims_.at(x.source()));
    for (const auto& [p, c] : x.terms()) m = add(field_, m, scale(field_, c, path_action(p)));
    return m;
  }

  /// v * p for v in M_{source(p)}.
  Column act(const Column& v, const PathWord& p) const {
    Column cur = v;
    for (ArrowId a : p.arrows) cur = apply(field_, action_[a], cur);
    return cur;
  }

 private:
  std::shared_ptr<const Quiver> quiver_;
  F field_{};
  std::vector<std::size_t> dims_;
  std::vector<Matrix<F>> action_;
};

/// A submodule given by a basis per vertex (columns of inclusion[v]).
template <ExactField F>
struct Submodule {
  RightModule<F> module;
  std::vector<Matrix<F>> inclusion;
};

template <ExactField F>
bool satisfies_relations(const PresentedAlgebra<F>& A, const RightModule<F>& M) {
  for (const auto& r : A.relations())
    if (!is_zero(A.field(), M.element_action(r))) return false;
  return true;
}

/// L with L * B = identity, for B of full column rank.
template <ExactField F>
Matrix<F> left_inverse(const F& f, const Matrix<F>& b) {
  const std::size_t k = b.cols();
  if (k == 0) return Matrix<F>(0, b.rows());
  auto ech = rref(f, transpose(b));  // pivots = independent rows of b
  if (ech.pivots.size() != k) throw std::invalid_argument("left_inverse: columns are dependent");
  Matrix<F> sq(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) sq(r, c) = b(ech.pivots[r], c);
  auto inv = inverse(f, sq);
  Matrix<F> l(k, b.rows());
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) l(r, ech.pivots[c]) = (*inv)(r, c);
  return l;
}

/// Submodule spanned by the given per-vertex bases, which must be closed
/// under the arrow actions.
template <ExactField F>
Submodule<F> restrict_to(const RightModule<F>& M, std::vector<Matrix<F>> bases) {
  const F& f = M.field();
  const Quiver& q = M.quiver();
  std::vector<std::size_t> dims(q.num_vertices());
  for (VertexId v = 0; v < q.num_vertices(); ++v) dims[v] = bases.at(v).cols();
  RightModule<F> sub(M.quiver_ptr(), f, dims);
  std::vector<Matrix<F>> linv(q.num_vertices());
  for (VertexId v = 0; v < q.num_vertices(); ++v) linv[v] = left_inverse(f, bases[v]);
  for (ArrowId a = 0; a < q.num_arrows(); ++a) {
    const auto& arr = q.arrow(a);
    Matrix<F> image = multiply(f, M.action(a), bases[arr.source]);
    Matrix<F> x = multiply(f, linv[arr.target], image);
    if (!(multiply(f, bases[arr.target], x) == image))
      throw std::logic_error("subspace is not closed under the action of " + arr.name);
    sub.set_action(a, std::move(x));
  }
  return {std::move(sub), std::move(bases)};
}

/// P_i = e_i Lambda on the normal words starting at i.
template <ExactField F>
RightModule<F> projective(const PresentedAlgebra<F>& A, VertexId i) {
  const Quiver& q = A.quiver();
  const std::size_t n = q.num_vertices();
  std::vector<std::size_t> dims(n);
  std::vector<std::map<std::size_t, std::size_t>> local(n);  // global basis idx -> local
  for (VertexId t = 0; t < n; ++t) {
    const auto& b = A.basis_between(i, t);
    dims[t] = b.size();
    for (std::size_t k = 0; k < b.size(); ++k) local[t].emplace(b[k], k);
  }
  RightModule<F> P(A.quiver_ptr(), A.field(), dims);
  for (ArrowId a = 0; a < q.num_arrows(); ++a) {
    const auto& arr = q.arrow(a);
    Matrix<F> m(dims[arr.target], dims[arr.source]);
    const auto& src = A.basis_between(i, arr.source);
    for (std::size_t c = 0; c < src.size(); ++c)
      for (const auto& [idx, val] : A.times_arrow(src[c], a)) m(local[arr.target].at(idx), c) = val;
    P.set_action(a, std::move(m));
  }
  return P;
}

template <ExactField F>
RightModule<F> simple(const PresentedAlgebra<F>& A, VertexId i) {
  std::vector<std::size_t> dims(A.quiver().num_vertices());
  dims.at(i) = 1;
  return RightModule<F>(A.quiver_ptr(), A.field(), dims);
}

template <ExactField F>
RightModule<F> zero_module(const PresentedAlgebra<F>& A) {
  return RightModule<F>(A.quiver_ptr(), A.field(), std::vector<std::size_t>(A.quiver().num_vertices()));
}

/// Direct sum; component v of the result stacks the summands in order.
template <ExactField F>
RightModule<F> direct_sum(std::shared_ptr<const Quiver> q, const F& f,
                          const std::vector<RightModule<F>>& parts) {
  const std::size_t n = q->num_vertices();
  std::vector<std::size_t> dims(n);
  for (const auto& p : parts)
    for (VertexId v = 0; v < n; ++v) dims[v] += p.dim(v);
  RightModule<F> S(q, f, dims);
  for (ArrowId a = 0; a < q->num_arrows(); ++a) {
    const auto& arr = q->arrow(a);
    Matrix<F> m(dims[arr.target], dims[arr.source]);
    std::size_t ro = 0, co = 0;
    for (const auto& p : parts) {
      const auto& pa = p.action(a);
      for (std::size_t r = 0; r < pa.rows(); ++r)
        for (std::size_t c = 0; c < pa.cols(); ++c) m(ro + r, co + c) = pa(r, c);
      ro += pa.rows();
      co += pa.cols();
    }
    S.set_action(a, std::move(m));
  }
  return S;
}

/// rad M = M J, spanned at t by the images of all arrows ending at t.
template <ExactField F>
Submodule<F> radical(const RightModule<F>& M) {
  const F& f = M.field();
  const Quiver& q = M.quiver();
  std::vector<Matrix<F>> bases(q.num_vertices());
  for (VertexId t = 0; t < q.num_vertices(); ++t) {
    Matrix<F> span(M.dim(t), 0);
    for (ArrowId a : q.in_arrows(t)) span = hstack(span, M.action(a));
    bases[t] = column_space(f, span);
  }
  return restrict_to(M, std::move(bases));
}

/// soc M: vectors killed by every arrow.
template <ExactField F>
Submodule<F> socle(const RightModule<F>& M) {
  const F& f = M.field();
  const Quiver& q = M.quiver();
  std::vector<Matrix<F>> bases(q.num_vertices());
  for (VertexId v = 0; v < q.num_vertices(); ++v) {
    Matrix<F> stacked(0, M.dim(v));
    for (ArrowId a : q.out_arrows(v)) stacked = vstack(stacked, M.action(a));
    bases[v] = kernel(f, stacked);
  }
  return restrict_to(M, std::move(bases));
}

/// Multiplicity of each simple in M / rad M.
template <ExactField F>
std::vector<std::size_t> top_multiplicities(const RightModule<F>& M) {
  auto rad = radical(M);
  std::vector<std::size_t> out(M.quiver().num_vertices());
  for (VertexId v = 0; v < out.size(); ++v) out[v] = M.dim(v) - rad.module.dim(v);
  return out;
}

template <ExactField F>
struct ProjectiveCover {
  RightModule<F> projective;
  std::vector<VertexId> summands;  // vertex of each indecomposable summand, in order
  std::vector<std::vector<typename F::value_type>> generators;  // image of e_v for each summand
  std::vector<Matrix<F>> map;  // per vertex: dim M_v x dim P_v
};

/// Top representatives at each vertex are the first standard basis vectors
/// independent of the radical, so the cover is deterministic.
template <ExactField F>
ProjectiveCover<F> projective_cover(const PresentedAlgebra<F>& A, const RightModule<F>& M) {
  const F& f = A.field();
  const Quiver& q = A.quiver();
  const std::size_t n = q.num_vertices();
  auto rad = radical(M);
  ProjectiveCover<F> cover;
  for (VertexId v = 0; v < n; ++v) {
    Subspace<F> span(f);
    for (std::size_t c = 0; c < rad.inclusion[v].cols(); ++c) span.insert(to_sparse(f, rad.inclusion[v].column(c)));
    for (std::size_t k = 0; k < M.dim(v) && span.dimension() < M.dim(v); ++k) {
      std::vector<typename F::value_type> e(M.dim(v));
      e[k] = f.one();
      if (span.insert(to_sparse(f, e))) {
        cover.summands.push_back(v);
        cover.generators.push_back(std::move(e));
      }
    }
  }
  std::vector<RightModule<F>> parts;
  for (VertexId v : cover.summands) parts.push_back(projective(A, v));
  cover.projective = parts.empty() ? zero_module(A) : direct_sum(A.quiver_ptr(), f, parts);
  cover.map.resize(n);
  for (VertexId t = 0; t < n; ++t) cover.map[t] = Matrix<F>(M.dim(t), cover.projective.dim(t));
  std::vector<std::size_t> offset(n);
  for (std::size_t s = 0; s < cover.summands.size(); ++s) {
    const VertexId v = cover.summands[s];
    // Normal words are prefix closed, so m * w extends m * (w minus last arrow).
    std::map<PathWord, std::vector<typename F::value_type>, DegLexLess> image;
    image[PathWord::trivial(v)] = cover.generators[s];
    std::vector<std::size_t> words = A.basis_from(v);
    std::sort(words.begin(), words.end());  // deglex, so prefixes come first
    std::vector<std::size_t> local(n);
    for (std::size_t idx : words) {
      const PathWord& w = A.basis_word(idx);
      if (!w.is_trivial()) {
        PathWord prefix{w.source, q.arrow(w.arrows.back()).source, {w.arrows.begin(), w.arrows.end() - 1}};
        image[w] = apply(f, M.action(w.arrows.back()), image.at(prefix));
      }
      // Position of w inside P_v's component at target(w): basis_between order.
      const auto& bt = A.basis_between(v, w.target);
      const std::size_t pos = std::lower_bound(bt.begin(), bt.end(), idx) - bt.begin();
      cover.map[w.target].set_column(offset[w.target] + pos, image[w]);
    }
    for (VertexId t = 0; t < n; ++t) offset[t] += A.basis_between(v, t).size();
  }
  return cover;
}

template <ExactField F>
Submodule<F> kernel_submodule(const RightModule<F>& source, const std::vector<Matrix<F>>& map) {
  const F& f = source.field();
  std::vector<Matrix<F>> bases(source.quiver().num_vertices());
  for (VertexId v = 0; v < bases.size(); ++v) bases[v] = kernel(f, map[v]);
  return restrict_to(source, std::move(bases));
}

template <ExactField F>
Submodule<F> image_submodule(const RightModule<F>& target, const std::vector<Matrix<F>>& map) {
  const F& f = target.field();
  std::vector<Matrix<F>> bases(target.quiver().num_vertices());
  for (VertexId v = 0; v < bases.size(); ++v) bases[v] = column_space(f, map[v]);
  return restrict_to(target, std::move(bases));
}

/// Omega(M): kernel of the projective cover.
template <ExactField F>
RightModule<F> syzygy(const PresentedAlgebra<F>& A, const RightModule<F>& M) {
  auto cover = projective_cover(A, M);
  return kernel_submodule(cover.projective, cover.map).module;
}

// ---------------------------------------------------------------------------
// Homomorphisms and isomorphism
// ---------------------------------------------------------------------------

/// A module map as one matrix per vertex (dim N_v x dim M_v).
template <ExactField F>
using ModuleMap = std::vector<Matrix<F>>;

/// Basis of Hom(M, N) from the intertwining equations N_a X_s = X_t M_a.
template <ExactField F>
std::vector<ModuleMap<F>> hom_space(const RightModule<F>& M, const RightModule<F>& N) {
  const F& f = M.field();
  const Quiver& q = M.quiver();
  const std::size_t n = q.num_vertices();
  std::vector<std::size_t> off(n + 1);
  for (VertexId v = 0; v < n; ++v) off[v + 1] = off[v] + N.dim(v) * M.dim(v);
  auto var = [&](VertexId v, std::size_t r, std::size_t c) { return off[v] + r * M.dim(v) + c; };
  Subspace<F> eqs(f);
  for (ArrowId a = 0; a < q.num_arrows(); ++a) {
    const auto& arr = q.arrow(a);
    const VertexId s = arr.source, t = arr.target;
    const auto& Na = N.action(a);
    const auto& Ma = M.action(a);
    for (std::size_t r = 0; r < N.dim(t); ++r)
      for (std::size_t c = 0; c < M.dim(s); ++c) {
        std::map<std::size_t, typename F::value_type> row;
        for (std::size_t k = 0; k < N.dim(s); ++k)
          if (!f.is_zero(Na(r, k))) row[var(s, k, c)] = f.add(row[var(s, k, c)], Na(r, k));
        for (std::size_t k = 0; k < M.dim(t); ++k)
          if (!f.is_zero(Ma(k, c))) row[var(t, r, k)] = f.sub(row[var(t, r, k)], Ma(k, c));
        SparseVector<F> sv;
        for (auto& [i, x] : row)
          if (!f.is_zero(x)) sv.emplace_back(i, x);
        if (!sv.empty()) eqs.insert(sv);
      }
  }
  std::vector<ModuleMap<F>> out;
  for (const auto& sol : kernel_of_rows(eqs, off[n])) {
    ModuleMap<F> phi(n);
    for (VertexId v = 0; v < n; ++v) phi[v] = Matrix<F>(N.dim(v), M.dim(v));
    for (const auto& [idx, x] : sol) {
      VertexId v = static_cast<VertexId>(std::upper_bound(off.begin(), off.end(), idx) - off.begin() - 1);
      const std::size_t local = idx - off[v];
      phi[v](local / M.dim(v), local % M.dim(v)) = x;
    }
    out.push_back(std::move(phi));
  }
  return out;
}

struct IsomorphismOptions {
  std::uint64_t max_evaluations = 200'000;
  std::uint64_t seed = 0x5eed;
};

namespace detail {

template <ExactField F>
bool combination_invertible(const F& f, const std::vector<ModuleMap<F>>& basis,
                            const std::vector<typename F::value_type>& c) {
  const std::size_t n = basis.front().size();
  for (VertexId v = 0; v < n; ++v) {
    const auto& shape = basis.front()[v];
    if (shape.rows() == 0) continue;
    Matrix<F> m(shape.rows(), shape.cols());
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (!f.is_zero(c[k])) m = add(f, m, scale(f, c[k], basis[k][v]));
    if (f.is_zero(determinant(f, m))) return false;
  }
  return true;
}

}  // namespace detail

/// True iff some element of Hom(M, N) is invertible.
///
/// An invertible combination sum c_k h_k is the nonvanishing of a polynomial of
/// total degree <= D = dim M in the c_k. Cheap candidates are tried first; a
/// negative answer is only given after the polynomial has been evaluated on a
/// full grid S^m with |S| > D (or S the whole field when it is smaller), which
/// is exact. Throws ResourceLimitExceeded if that grid is too large.
template <ExactField F>
bool modules_isomorphic(const RightModule<F>& M, const RightModule<F>& N, IsomorphismOptions opts = {}) {
  using T = typename F::value_type;
  const F& f = M.field();
  if (M.dimension_vector() != N.dimension_vector()) return false;
  const std::size_t D = M.total_dimension();
  if (D == 0) return true;
  if (D == 1) return true;  // one-dimensional modules at the same vertex; arrows act nilpotently

  if (top_multiplicities(M) != top_multiplicities(N)) return false;
  if (socle(M).module.dimension_vector() != socle(N).module.dimension_vector()) return false;
  const auto hom = hom_space(M, N);
  const std::size_t m = hom.size();
  if (m == 0) return false;
  if (hom_space(N, N).size() != m || hom_space(M, M).size() != m || hom_space(N, M).size() != m) return false;

  for (std::size_t k = 0; k < m; ++k) {
    std::vector<T> c(m, f.zero());
    c[k] = f.one();
    if (detail::combination_invertible(f, hom, c)) return true;
  }
  const std::uint64_t order = f.order();
  const std::uint64_t grid = (order != 0 && order <= D) ? order : D + 1;
  std::mt19937_64 rng(opts.seed);
  for (int t = 0; t < 24; ++t) {
    std::vector<T> c(m);
    const std::uint64_t span = order == 0 ? 1'000'003 : order;
    for (auto& x : c) x = f.element(rng() % span);
    if (detail::combination_invertible(f, hom, c)) return true;
  }
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < m; ++k) {
    if (total > opts.max_evaluations / grid)
      throw ResourceLimitExceeded("isomorphism test: Hom space of dimension " + std::to_string(m) +
                                  " needs more than " + std::to_string(opts.max_evaluations) +
                                  " exact evaluations");
    total *= grid;
  }
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<T> c(m);
    std::uint64_t rest = code;
    for (std::size_t k = 0; k < m; ++k) {
      c[k] = f.element(rest % grid);
      rest /= grid;
    }
    if (detail::combination_invertible(f, hom, c)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Periods
// ---------------------------------------------------------------------------

struct PeriodResult {
  std::optional<std::size_t> period;
  std::string reason;  // why no period was found, empty otherwise
  std::vector<std::size_t> dimensions;  // dim Omega^k(S_i), k = 1, 2, ...
};

/// Least d <= max_k with Omega^d(S_i) = S_i. Stops on a zero syzygy or when a
/// syzygy exceeds dim_cap (default 10 dim Lambda).
template <ExactField F>
PeriodResult omega_period(const PresentedAlgebra<F>& A, VertexId i, std::size_t max_k,
                          std::optional<std::size_t> dim_cap = std::nullopt) {
  const std::size_t cap = dim_cap.value_or(10 * A.dimension());
  PeriodResult res;
  const RightModule<F> S = simple(A, i);
  RightModule<F> cur = S;
  for (std::size_t k = 1; k <= max_k; ++k) {
    cur = syzygy(A, cur);
    res.dimensions.push_back(cur.total_dimension());
    if (cur.is_zero()) {
      res.reason = "Omega^" + std::to_string(k) + "(S) is zero";
      return res;
    }
    if (cur.total_dimension() > cap) {
      res.reason = "Omega^" + std::to_string(k) + "(S) has dimension " +
                   std::to_string(cur.total_dimension()) + " > cap " + std::to_string(cap);
      return res;
    }
    if (modules_isomorphic(cur, S)) {
      res.period = k;
      return res;
    }
  }
  res.reason = "no period <= " + std::to_string(max_k);
  return res;
}

}  // namespace bq
