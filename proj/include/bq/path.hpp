#pragma once

// Paths in a quiver and formal linear combinations of parallel paths.
//
// Paths compose left to right: for alpha: i -> j and beta: j -> k the product
// alpha*beta is the path i -> k. The monomial order used everywhere is
// length first, then lexicographic on arrow ids ("deglex"); the leading term
// of an element is its greatest path.

#include "bq/field.hpp"
#include "bq/quiver.hpp"

#include <compare>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bq {

struct PathWord {
  VertexId source = 0;
  VertexId target = 0;
  std::vector<ArrowId> arrows;

  static PathWord trivial(VertexId v) { return {v, v, {}}; }
  static PathWord of_arrow(const Quiver& q, ArrowId a) {
    return {q.arrow(a).source, q.arrow(a).target, {a}};
  }

  std::size_t length() const { return arrows.size(); }
  bool is_trivial() const { return arrows.empty(); }

  bool operator==(const PathWord&) const = default;
};

/// Length, then arrow sequence, then source vertex (only matters for trivial paths).
inline std::strong_ordering deglex_compare(const PathWord& a, const PathWord& b) {
  if (auto c = a.arrows.size() <=> b.arrows.size(); c != 0) return c;
  if (auto c = a.arrows <=> b.arrows; c != 0) return c;
  if (auto c = a.source <=> b.source; c != 0) return c;
  return a.target <=> b.target;
}

struct DegLexLess {
  bool operator()(const PathWord& a, const PathWord& b) const { return deglex_compare(a, b) < 0; }
};

/// Checks that the arrow sequence composes and fills in source/target.
inline PathWord make_path(const Quiver& q, VertexId source, std::vector<ArrowId> arrows) {
  PathWord p{source, source, std::move(arrows)};
  VertexId at = source;
  for (ArrowId a : p.arrows) {
    if (q.arrow(a).source != at)
      throw std::invalid_argument("arrows do not compose into a path");
    at = q.arrow(a).target;
  }
  p.target = at;
  return p;
}

inline std::optional<PathWord> compose(const PathWord& a, const PathWord& b) {
  if (a.target != b.source) return std::nullopt;
  PathWord p{a.source, b.target, a.arrows};
  p.arrows.insert(p.arrows.end(), b.arrows.begin(), b.arrows.end());
  return p;
}

inline std::string path_to_string(const Quiver& q, const PathWord& p) {
  if (p.is_trivial()) return "e" + q.vertex_name(p.source);
  std::string s;
  for (std::size_t k = 0; k < p.arrows.size(); ++k) {
    if (k) s += "*";
    s += q.arrow(p.arrows[k]).name;
  }
  return s;
}

/// Sum of parallel paths with nonzero coefficients. The zero element still
/// carries its (source, target) pair.
template <ExactField F>
class AlgebraElement {
 public:
  using value_type = typename F::value_type;
  using Terms = std::map<PathWord, value_type, DegLexLess>;

  AlgebraElement() = default;
  AlgebraElement(VertexId source, VertexId target) : source_(source), target_(target) {}

  static AlgebraElement from_path(const F& f, const PathWord& p) {
    AlgebraElement e(p.source, p.target);
    e.add_term(f, p, f.one());
    return e;
  }

  VertexId source() const { return source_; }
  VertexId target() const { return target_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Greatest path; requires a nonzero element.
  const PathWord& leading_path() const { return terms_.rbegin()->first; }
  const value_type& leading_coefficient() const { return terms_.rbegin()->second; }

  value_type coefficient(const F& f, const PathWord& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? f.zero() : it->second;
  }

  std::size_t min_length() const {
    return terms_.empty() ? 0 : terms_.begin()->first.length();
  }
  std::size_t max_length() const { return terms_.empty() ? 0 : leading_path().length(); }

  void add_term(const F& f, const PathWord& p, const value_type& c) {
    if (p.source != source_ || p.target != target_)
      throw std::invalid_argument("term is not parallel to the element");
    if (f.is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(p, c);
    if (!inserted) {
      it->second = f.add(it->second, c);
      if (f.is_zero(it->second)) terms_.erase(it);
    }
  }

  void add_scaled(const F& f, const AlgebraElement& o, const value_type& s) {
    if (o.source_ != source_ || o.target_ != target_)
      throw std::invalid_argument("adding non-parallel elements");
    for (const auto& [p, c] : o.terms_) add_term(f, p, f.mul(s, c));
  }

  AlgebraElement scaled(const F& f, const value_type& s) const {
    AlgebraElement e(source_, target_);
    if (f.is_zero(s)) return e;
    for (const auto& [p, c] : terms_) e.terms_.emplace(p, f.mul(s, c));
    return e;
  }

  bool operator==(const AlgebraElement&) const = default;

 private:
  VertexId source_ = 0;
  VertexId target_ = 0;
  Terms terms_;
};

/// Product in the path algebra KQ (concatenation, no reduction). Returns the
/// zero element source(x) -> target(y) when the factors do not compose.
template <ExactField F>
AlgebraElement<F> path_product(const F& f, const AlgebraElement<F>& x, const AlgebraElement<F>& y) {
  AlgebraElement<F> out(x.source(), y.target());
  if (x.target() != y.source()) return out;
  for (const auto& [p, a] : x.terms())
    for (const auto& [r, b] : y.terms()) out.add_term(f, *compose(p, r), f.mul(a, b));
  return out;
}

template <ExactField F>
std::string element_to_string(const F& f, const Quiver& q, const AlgebraElement<F>& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Leading term first.
  for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
    std::string c = f.to_string(it->second);
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c.erase(0, 1);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (c != "1") os << (c.find('/') != std::string::npos ? "(" + c + ")" : c) << "*";
    os << path_to_string(q, it->first);
    first = false;
  }
  return os.str();
}

}  // namespace bq
