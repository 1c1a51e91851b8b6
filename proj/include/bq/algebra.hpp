#pragma once

// Presented algebras KQ/I over an exact field.
//
// Construction completes the defining relations to a confluent rewriting
// system for the deglex order (a noncommutative Groebner basis of I in the
// path algebra): every relation is made monic in its greatest path, and
// critical pairs (overlaps of leading paths) are resolved until none is left.
// The paths containing no leading path as a subword ("normal words") then
// form a basis of the algebra. Finite dimension and nilpotency of the
// radical are certified on that basis rather than assumed.

#include "bq/field.hpp"
#include "bq/linalg.hpp"
#include "bq/path.hpp"
#include "bq/quiver.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace bq {

class BuildError : public std::runtime_error {
 public:
  enum class Kind { NotAdmissible, NotFiniteDimensional, BoundTooSmall };

  BuildError(Kind kind, std::string message, std::optional<PathWord> witness = std::nullopt)
      : std::runtime_error(std::move(message)), kind_(kind), witness_(std::move(witness)) {}

  Kind kind() const { return kind_; }
  const std::optional<PathWord>& witness() const { return witness_; }

 private:
  Kind kind_;
  std::optional<PathWord> witness_;
};

inline const char* to_string(BuildError::Kind k) {
  switch (k) {
    case BuildError::Kind::NotAdmissible: return "NotAdmissible";
    case BuildError::Kind::NotFiniteDimensional: return "NotFiniteDimensional";
    case BuildError::Kind::BoundTooSmall: return "BoundTooSmall";
  }
  return "?";
}

inline constexpr std::size_t kDefaultDegreeBound = 30;

struct BuildOptions {
  std::size_t degree_bound = kDefaultDegreeBound;
  std::size_t max_rules = 20'000;
  std::size_t max_basis = 100'000;
};

/// Monic rewriting rule: leading path -> -(tail). `poly` = leading + tail.
template <ExactField F>
struct RewriteRule {
  PathWord lead;
  AlgebraElement<F> poly;
};

template <ExactField F>
class PresentedAlgebra {
 public:
  using value_type = typename F::value_type;
  using Element = AlgebraElement<F>;
  using Vector = SparseVector<F>;  // coordinates over basis() indices

  static PresentedAlgebra build(Quiver quiver, std::vector<Element> relations, F field,
                                BuildOptions opts = {}) {
    PresentedAlgebra a;
    a.quiver_ = std::make_shared<const Quiver>(std::move(quiver));
    a.relations_ = std::move(relations);
    a.field_ = std::move(field);
    a.opts_ = opts;
    a.check_relations();
    a.complete();
    a.enumerate_basis();
    a.build_action_table();
    a.compute_nilpotency();
    return a;
  }

  const Quiver& quiver() const { return *quiver_; }
  std::shared_ptr<const Quiver> quiver_ptr() const { return quiver_; }
  const F& field() const { return field_; }
  const std::vector<Element>& relations() const { return relations_; }
  std::size_t degree_bound() const { return opts_.degree_bound; }
  const std::vector<RewriteRule<F>>& rules() const { return rules_; }

  std::size_t dimension() const { return basis_.size(); }
  const std::vector<PathWord>& basis() const { return basis_; }
  const PathWord& basis_word(std::size_t idx) const { return basis_.at(idx); }

  /// Basis indices of normal words from s to t, in deglex order.
  const std::vector<std::size_t>& basis_between(VertexId s, VertexId t) const {
    return between_.at(s * quiver_->num_vertices() + t);
  }
  /// Basis indices of normal words starting at s (a basis of e_s Lambda), grouped by target.
  std::vector<std::size_t> basis_from(VertexId s) const {
    std::vector<std::size_t> out;
    for (VertexId t = 0; t < quiver_->num_vertices(); ++t) {
      const auto& b = basis_between(s, t);
      out.insert(out.end(), b.begin(), b.end());
    }
    return out;
  }

  std::optional<std::size_t> index_of(const PathWord& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Least d with J^d = 0.
  std::size_t nilpotency_degree() const { return nilpotency_; }

  /// C[a][b] = dim e_a Lambda e_b.
  std::vector<std::vector<std::size_t>> cartan_matrix() const {
    const std::size_t n = quiver_->num_vertices();
    std::vector<std::vector<std::size_t>> c(n, std::vector<std::size_t>(n));
    for (VertexId s = 0; s < n; ++s)
      for (VertexId t = 0; t < n; ++t) c[s][t] = basis_between(s, t).size();
    return c;
  }

  /// Dimension vector of P_i = e_i Lambda (multiplicity of S_a is dim e_i Lambda e_a).
  std::vector<std::size_t> dimension_vector_of_projective(VertexId i) const {
    return cartan_matrix().at(i);
  }

  /// Unique reduced representative of x modulo I.
  Element normal_form(const Element& x) const { return reduce(x); }

  /// Product in Lambda; zero (source(x) -> target(y)) if the factors do not compose.
  Element multiply(const Element& x, const Element& y) const {
    return reduce(path_product(field_, x, y));
  }

  // ---- coordinate-level interface used by modules ------------------------

  Vector coordinates(const Element& x) const {
    Element r = reduce(x);
    Vector v;
    for (const auto& [p, c] : r.terms()) v.emplace_back(index_.at(p), c);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

  /// Element with the given coordinates; all basis words must run s -> t.
  Element element(const Vector& v, VertexId s, VertexId t) const {
    Element e(s, t);
    for (const auto& [idx, c] : v) e.add_term(field_, basis_.at(idx), c);
    return e;
  }

  Element basis_element(std::size_t idx) const {
    return Element::from_path(field_, basis_.at(idx));
  }

  /// basis word idx times arrow a; requires target(word) = source(a).
  const Vector& times_arrow(std::size_t idx, ArrowId a) const {
    return action_.at(idx * quiver_->num_arrows() + a);
  }

  /// v * p for a coordinate vector v whose words all end at source(p).
  Vector times_path(const Vector& v, const PathWord& p) const {
    Vector cur = v;
    for (ArrowId a : p.arrows) {
      Vector next;
      for (const auto& [idx, c] : cur) next = axpy(field_, next, c, times_arrow(idx, a));
      cur = std::move(next);
      if (cur.empty()) break;
    }
    return cur;
  }

  /// Product of basis words (zero vector if they do not compose).
  Vector basis_product(std::size_t i, std::size_t j) const {
    if (basis_[i].target != basis_[j].source) return {};
    return times_path(Vector{{i, field_.one()}}, basis_[j]);
  }

  /// Product of coordinate vectors; x's words must end where y's words start.
  Vector multiply_coordinates(const Vector& x, const Vector& y) const {
    Vector out;
    for (const auto& [j, b] : y) {
      Vector xj = times_path(x, basis_[j]);
      out = axpy(field_, out, b, xj);
    }
    return out;
  }

 private:
  PresentedAlgebra() = default;

  // ---- relation checks ----------------------------------------------------

  void check_relations() {
    for (const auto& r : relations_) {
      for (const auto& [p, c] : r.terms()) {
        if (p.length() < 2)
          throw BuildError(BuildError::Kind::NotAdmissible,
                           "relation term '" + path_to_string(*quiver_, p) +
                               "' has length < 2, so I is not inside J^2",
                           p);
        make_path(*quiver_, p.source, p.arrows);  // throws if not a path
      }
    }
  }

  // ---- rewriting ------------------------------------------------------------

  struct TrieNode {
    std::map<ArrowId, std::size_t> next;
    std::optional<std::size_t> rule;  // index into live rules
  };

  void trie_insert(const PathWord& w, std::size_t rule) {
    std::size_t node = 0;
    for (ArrowId a : w.arrows) {
      auto it = trie_[node].next.find(a);
      if (it == trie_[node].next.end()) {
        trie_.push_back({});
        it = trie_[node].next.emplace(a, trie_.size() - 1).first;
      }
      node = it->second;
    }
    trie_[node].rule = rule;
  }

  void rebuild_trie() {
    trie_.assign(1, {});
    for (std::size_t r = 0; r < work_rules_.size(); ++r)
      if (work_rules_[r].alive) trie_insert(work_rules_[r].rule.lead, r);
  }

  /// First (rule, offset) whose leading path occurs in w, scanning offsets left to right.
  std::optional<std::pair<std::size_t, std::size_t>> find_match(const PathWord& w) const {
    const auto& arr = w.arrows;
    for (std::size_t start = 0; start < arr.size(); ++start) {
      std::size_t node = 0;
      for (std::size_t k = start; k < arr.size(); ++k) {
        auto it = trie_[node].next.find(arr[k]);
        if (it == trie_[node].next.end()) break;
        node = it->second;
        if (trie_[node].rule) return std::make_pair(*trie_[node].rule, start);
      }
    }
    return std::nullopt;
  }

  /// True if some leading path is a suffix of w.
  bool has_reducible_suffix(const PathWord& w) const {
    const auto& arr = w.arrows;
    for (std::size_t start = 0; start < arr.size(); ++start) {
      std::size_t node = 0;
      std::size_t k = start;
      for (; k < arr.size(); ++k) {
        auto it = trie_[node].next.find(arr[k]);
        if (it == trie_[node].next.end()) break;
        node = it->second;
      }
      if (k == arr.size() && trie_[node].rule) return true;
    }
    return false;
  }

  Element reduce(const Element& x) const {
    Element done(x.source(), x.target());
    Element work = x;
    while (!work.is_zero()) {
      auto top = std::prev(work.terms().end());
      const PathWord w = top->first;
      const value_type c = top->second;
      auto m = find_match(w);
      if (!m) {
        done.add_term(field_, w, c);
        work.add_term(field_, w, field_.neg(c));
        continue;
      }
      const auto& rule = work_rules_[m->first].rule;
      const std::size_t start = m->second;
      PathWord prefix{w.source, rule.lead.source,
                      {w.arrows.begin(), w.arrows.begin() + static_cast<std::ptrdiff_t>(start)}};
      PathWord suffix{rule.lead.target, w.target,
                      {w.arrows.begin() + static_cast<std::ptrdiff_t>(start + rule.lead.length()),
                       w.arrows.end()}};
      for (const auto& [p, pc] : rule.poly.terms()) {
        PathWord full = *compose(*compose(prefix, p), suffix);
        work.add_term(field_, full, field_.neg(field_.mul(c, pc)));
      }
    }
    return done;
  }

  struct WorkRule {
    RewriteRule<F> rule;
    bool alive = true;
  };

  struct Pair {
    std::size_t overlap_length;
    std::size_t left, right, shift;  // right's leading path starts at `shift` within left's
    bool operator>(const Pair& o) const {
      return std::tie(overlap_length, left, right, shift) >
             std::tie(o.overlap_length, o.left, o.right, o.shift);
    }
  };

  void make_monic(Element& e) const { e = e.scaled(field_, field_.inv(e.leading_coefficient())); }

  void queue_pairs(std::size_t r, std::priority_queue<Pair, std::vector<Pair>, std::greater<>>& q) {
    const auto& lr = work_rules_[r].rule.lead.arrows;
    for (std::size_t o = 0; o < work_rules_.size(); ++o) {
      if (!work_rules_[o].alive) continue;
      const auto& lo = work_rules_[o].rule.lead.arrows;
      // r then o, and o then r (self-overlaps once).
      for (int dir = 0; dir < (o == r ? 1 : 2); ++dir) {
        const auto& left = dir == 0 ? lr : lo;
        const auto& right = dir == 0 ? lo : lr;
        const std::size_t li = dir == 0 ? r : o, ri = dir == 0 ? o : r;
        for (std::size_t shift = 1; shift < left.size(); ++shift) {
          const std::size_t ov = left.size() - shift;
          if (ov >= right.size()) continue;  // inclusion, removed by interreduction
          if (!std::equal(left.begin() + static_cast<std::ptrdiff_t>(shift), left.end(),
                          right.begin()))
            continue;
          q.push({shift + right.size(), li, ri, shift});
        }
      }
    }
  }

  void complete() {
    const std::size_t bound = opts_.degree_bound;
    std::priority_queue<Pair, std::vector<Pair>, std::greater<>> pairs;
    std::vector<Element> pending(relations_.begin(), relations_.end());
    trie_.assign(1, {});

    auto add_pending = [&]() {
      while (!pending.empty()) {
        Element e = reduce(pending.front());
        pending.erase(pending.begin());
        if (e.is_zero()) continue;
        make_monic(e);
        const PathWord lead = e.leading_path();
        if (lead.length() > bound)
          throw BuildError(BuildError::Kind::BoundTooSmall,
                           "completion needs a rule with leading path of length " +
                               std::to_string(lead.length()) + " > degree bound " +
                               std::to_string(bound),
                           lead);
        // Rules whose leading path contains the new one are reduced again later.
        bool removed = false;
        for (auto& wr : work_rules_) {
          if (!wr.alive) continue;
          const auto& big = wr.rule.lead.arrows;
          if (std::search(big.begin(), big.end(), lead.arrows.begin(), lead.arrows.end()) !=
              big.end()) {
            wr.alive = false;
            pending.push_back(wr.rule.poly);
            removed = true;
          }
        }
        work_rules_.push_back({{lead, std::move(e)}, true});
        if (work_rules_.size() > opts_.max_rules)
          throw BuildError(BuildError::Kind::BoundTooSmall, "rewriting system exceeded rule cap");
        if (removed) {
          rebuild_trie();
        } else {
          trie_insert(lead, work_rules_.size() - 1);
        }
        queue_pairs(work_rules_.size() - 1, pairs);
      }
    };

    add_pending();
    while (!pairs.empty()) {
      Pair p = pairs.top();
      pairs.pop();
      if (!work_rules_[p.left].alive || !work_rules_[p.right].alive) continue;
      const auto& l = work_rules_[p.left].rule;
      const auto& r = work_rules_[p.right].rule;
      // l.poly * (tail of r.lead after the overlap) - (head of l.lead) * r.poly
      const std::size_t ov = l.lead.length() - p.shift;
      PathWord tail{l.lead.target, r.lead.target,
                    {r.lead.arrows.begin() + static_cast<std::ptrdiff_t>(ov), r.lead.arrows.end()}};
      PathWord head{l.lead.source, r.lead.source,
                    {l.lead.arrows.begin(),
                     l.lead.arrows.begin() + static_cast<std::ptrdiff_t>(p.shift)}};
      Element s = path_product(field_, l.poly, Element::from_path(field_, tail));
      s.add_scaled(field_, path_product(field_, Element::from_path(field_, head), r.poly),
                   field_.neg(field_.one()));
      pending.push_back(std::move(s));
      add_pending();
    }

    // Final interreduction of tails gives a canonical (reduced) system.
    std::vector<RewriteRule<F>> live;
    for (auto& wr : work_rules_)
      if (wr.alive) live.push_back(wr.rule);
    std::sort(live.begin(), live.end(),
              [](const auto& a, const auto& b) { return deglex_compare(a.lead, b.lead) < 0; });
    work_rules_.clear();
    for (auto& r : live) work_rules_.push_back({std::move(r), true});
    rebuild_trie();
    for (auto& wr : work_rules_) {
      Element tail = wr.rule.poly;
      tail.add_term(field_, wr.rule.lead, field_.neg(field_.one()));
      Element reduced_tail = reduce(tail);
      Element poly = Element::from_path(field_, wr.rule.lead);
      poly.add_scaled(field_, reduced_tail, field_.one());
      wr.rule.poly = std::move(poly);
    }
    rules_.clear();
    for (const auto& wr : work_rules_) rules_.push_back(wr.rule);
  }

  // ---- basis ------------------------------------------------------------------

  void enumerate_basis() {
    const std::size_t n = quiver_->num_vertices();
    std::vector<PathWord> layer;
    for (VertexId v = 0; v < n; ++v) layer.push_back(PathWord::trivial(v));
    std::vector<PathWord> all = layer;
    while (!layer.empty()) {
      std::vector<PathWord> next;
      for (const auto& w : layer) {
        for (ArrowId a : quiver_->out_arrows(w.target)) {
          PathWord x = w;
          x.arrows.push_back(a);
          x.target = quiver_->arrow(a).target;
          if (has_reducible_suffix(x)) continue;
          if (x.length() >= opts_.degree_bound)
            throw BuildError(BuildError::Kind::NotFiniteDimensional,
                             "normal word '" + path_to_string(*quiver_, x) +
                                 "' survives at the degree bound " +
                                 std::to_string(opts_.degree_bound),
                             x);
          next.push_back(std::move(x));
        }
      }
      all.insert(all.end(), next.begin(), next.end());
      if (all.size() > opts_.max_basis)
        throw BuildError(BuildError::Kind::NotFiniteDimensional,
                         "normal-word basis exceeds " + std::to_string(opts_.max_basis) +
                             " elements");
      layer = std::move(next);
    }
    std::sort(all.begin(), all.end(), DegLexLess{});
    basis_ = std::move(all);
    between_.assign(n * n, {});
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      index_.emplace(basis_[i], i);
      between_[basis_[i].source * n + basis_[i].target].push_back(i);
    }
  }

  void build_action_table() {
    const std::size_t m = quiver_->num_arrows();
    action_.assign(basis_.size() * m, {});
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      for (ArrowId a : quiver_->out_arrows(basis_[i].target)) {
        PathWord w = basis_[i];
        w.arrows.push_back(a);
        w.target = quiver_->arrow(a).target;
        Element r = reduce(Element::from_path(field_, w));
        Vector v;
        for (const auto& [p, c] : r.terms()) v.emplace_back(index_.at(p), c);
        std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        action_[i * m + a] = std::move(v);
      }
    }
  }

  // J^1 is spanned by the nontrivial normal words; J^{k+1} = J^k * J.
  void compute_nilpotency() {
    Subspace<F> current(field_);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (!basis_[i].is_trivial()) current.insert({{i, field_.one()}});
    std::size_t k = 1;
    while (current.dimension() > 0) {
      Subspace<F> next(field_);
      for (const auto& [piv, row] : current.rows()) {
        // Rows may mix targets; split by target before multiplying.
        std::map<VertexId, Vector> by_target;
        for (const auto& e : row) by_target[basis_[e.first].target].push_back(e);
        for (const auto& [tv, part] : by_target)
          for (ArrowId a : quiver_->out_arrows(tv)) next.insert(times_path(part, PathWord::of_arrow(*quiver_, a)));
      }
      if (next.dimension() == current.dimension()) {
        const auto& w = basis_[current.rows().begin()->second.front().first];
        throw BuildError(BuildError::Kind::NotAdmissible,
                         "radical is not nilpotent (J^" + std::to_string(k) +
                             " = J^" + std::to_string(k + 1) + " != 0)",
                         w);
      }
      current = std::move(next);
      ++k;
    }
    nilpotency_ = k;
  }

  std::shared_ptr<const Quiver> quiver_;
  std::vector<Element> relations_;
  F field_{};
  BuildOptions opts_;
  std::vector<WorkRule> work_rules_;
  std::vector<RewriteRule<F>> rules_;
  std::vector<TrieNode> trie_;
  std::vector<PathWord> basis_;
  std::map<PathWord, std::size_t, DegLexLess> index_;
  std::vector<std::vector<std::size_t>> between_;
  std::vector<Vector> action_;
  std::size_t nilpotency_ = 0;
};

}  // namespace bq
