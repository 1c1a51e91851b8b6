#pragma once

// Minimal relations I/(JI+IJ) and the "p occurs in a minimal relation" test.
//
// Everything is computed in the truncated path space KQ_{<=L} with L the
// nilpotency degree d of the radical: paths of length >= d lie in I, so
// J^{d+1} is inside JI+IJ and nothing above length d is needed.
//
//   V = I truncated, spanned by p - nf(p) for the non-normal paths p, |p| <= L
//   W = JI+IJ truncated, spanned by a*v and v*a for v in that spanning set
//
// Paths from a fixed source are indexed in decreasing deglex order, so the
// pivot of a reduced echelon row is its leading path.

#include "bq/algebra.hpp"

#include <map>
#include <set>
#include <vector>

namespace bq {

template <ExactField F>
class MinimalRelations {
 public:
  using Element = AlgebraElement<F>;
  using Vector = SparseVector<F>;

  explicit MinimalRelations(const PresentedAlgebra<F>& A) : A_(&A) {
    const Quiver& q = A.quiver();
    const std::size_t n = q.num_vertices();
    L_ = std::max<std::size_t>(A.nilpotency_degree(), 2);
    per_source_.resize(n);
    for (VertexId s = 0; s < n; ++s) index_paths(s);

    // V generators, kept as elements so they can be multiplied by arrows.
    std::vector<std::vector<Element>> gens(n);
    for (VertexId s = 0; s < n; ++s) {
      auto& ps = per_source_[s];
      Subspace<F> V(A.field());
      for (const auto& p : ps.paths) {
        if (p.length() < 2 || A.index_of(p)) continue;
        Element g = Element::from_path(A.field(), p);
        g.add_scaled(A.field(), A.normal_form(g), A.field().neg(A.field().one()));
        V.insert(to_vector(s, g));
        gens[s].push_back(std::move(g));
      }
      for (const auto& [piv, row] : V.rows())
        for (const auto& [idx, c] : row) ps.support.insert(idx);
      ps.V = std::move(V);
    }

    for (VertexId s = 0; s < n; ++s) {
      auto& ps = per_source_[s];
      Subspace<F> W(A.field());
      for (const auto& g : gens[s])
        for (ArrowId a : q.out_arrows(g.target()))
          W.insert(to_vector(s, path_product(A.field(), g, Element::from_path(A.field(), PathWord::of_arrow(q, a)))));
      for (ArrowId a : q.out_arrows(s)) {
        const VertexId y = q.arrow(a).target;
        for (const auto& g : gens[y])
          W.insert(to_vector(s, path_product(A.field(), Element::from_path(A.field(), PathWord::of_arrow(q, a)), g)));
      }
      // U = W + V; rows whose pivot is new lift a basis of V/W.
      Subspace<F> U = W;
      for (const auto& [piv, row] : ps.V.rows()) U.insert(row);
      std::set<std::size_t> w_pivots;
      for (const auto& [piv, row] : W.rows()) w_pivots.insert(piv);
      for (const auto& [piv, row] : U.rows()) {
        if (w_pivots.count(piv)) continue;
        Element e = to_element(s, row);
        ps.nonzero_quotient.insert(e.target());
        relations_[{s, e.target()}].push_back(std::move(e));
      }
    }
  }

  std::size_t truncation() const { return L_; }

  /// Lifts of a basis of e_i (I/(JI+IJ)) e_j, leading paths strictly decreasing.
  const std::vector<Element>& between(VertexId i, VertexId j) const {
    static const std::vector<Element> empty;
    auto it = relations_.find({i, j});
    return it == relations_.end() ? empty : it->second;
  }

  const std::map<std::pair<VertexId, VertexId>, std::vector<Element>>& all() const {
    return relations_;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (const auto& [k, v] : relations_) c += v.size();
    return c;
  }

  /// p occurs with nonzero coefficient in some element of e_i I e_j outside
  /// JI+IJ. Exact over every field: if the coefficient functional of p is
  /// nonzero on I and some r in I avoids JI+IJ, then r or r + x works for a
  /// suitable x in I carrying p.
  bool precedes(const PathWord& p) const {
    if (p.is_trivial()) return false;
    const auto& ps = per_source_.at(p.source);
    if (!ps.nonzero_quotient.count(p.target)) return false;
    if (p.length() > L_) return true;  // p itself lies in I
    auto it = ps.index.find(p);
    return it != ps.index.end() && ps.support.count(it->second) > 0;
  }

 private:
  struct SourceData {
    std::vector<PathWord> paths;  // decreasing deglex
    std::map<PathWord, std::size_t, DegLexLess> index;
    Subspace<F> V{F{}};
    std::set<std::size_t> support;
    std::set<VertexId> nonzero_quotient;
  };

  void index_paths(VertexId s) {
    const Quiver& q = A_->quiver();
    auto& ps = per_source_[s];
    ps.V = Subspace<F>(A_->field());
    std::vector<PathWord> all{PathWord::trivial(s)}, layer = all;
    for (std::size_t len = 1; len <= L_; ++len) {
      std::vector<PathWord> next;
      for (const auto& w : layer)
        for (ArrowId a : q.out_arrows(w.target)) next.push_back(*compose(w, PathWord::of_arrow(q, a)));
      all.insert(all.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return deglex_compare(a, b) > 0; });
    ps.paths = std::move(all);
    for (std::size_t i = 0; i < ps.paths.size(); ++i) ps.index.emplace(ps.paths[i], i);
  }

  /// Coordinates of the truncation of x to length <= L.
  Vector to_vector(VertexId s, const Element& x) const {
    const auto& ps = per_source_[s];
    Vector v;
    for (const auto& [p, c] : x.terms())
      if (p.length() <= L_) v.emplace_back(ps.index.at(p), c);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

  Element to_element(VertexId s, const Vector& v) const {
    const auto& ps = per_source_[s];
    const PathWord& first = ps.paths[v.front().first];
    Element e(s, first.target);
    for (const auto& [idx, c] : v) e.add_term(A_->field(), ps.paths[idx], c);
    return e;
  }

  const PresentedAlgebra<F>* A_;
  std::size_t L_ = 0;
  std::vector<SourceData> per_source_;
  std::map<std::pair<VertexId, VertexId>, std::vector<Element>> relations_;
};

}  // namespace bq
