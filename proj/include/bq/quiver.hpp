#pragma once

// Quivers as combinatorial objects: validation, vertex profiles, the
// forbidden-pattern finders used by screening, triangle/square enumeration,
// canonical forms and exhaustive enumeration of small biserial quivers.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bq {

using VertexId = std::size_t;
using ArrowId = std::size_t;

struct Arrow {
  std::string name;
  VertexId source = 0;
  VertexId target = 0;

  bool is_loop() const { return source == target; }
  bool operator==(const Arrow&) const = default;
};

/// Finite directed multigraph on vertices 0..n-1. Loops and parallel arrows
/// are allowed. Vertex and arrow names are carried for I/O only.
class Quiver {
 public:
  Quiver() = default;

  Quiver(std::size_t num_vertices, std::vector<Arrow> arrows,
         std::vector<std::string> vertex_names = {})
      : vertex_names_(std::move(vertex_names)), arrows_(std::move(arrows)) {
    if (vertex_names_.empty()) {
      for (std::size_t v = 0; v < num_vertices; ++v) vertex_names_.push_back(std::to_string(v + 1));
    }
    if (vertex_names_.size() != num_vertices)
      throw std::invalid_argument("vertex name count does not match vertex count");
    if (std::set<std::string>(vertex_names_.begin(), vertex_names_.end()).size() != num_vertices)
      throw std::invalid_argument("vertex names must be unique");
    std::set<std::string> seen;
    out_.assign(num_vertices, {});
    in_.assign(num_vertices, {});
    for (ArrowId a = 0; a < arrows_.size(); ++a) {
      auto& arr = arrows_[a];
      if (arr.source >= num_vertices || arr.target >= num_vertices)
        throw std::invalid_argument("arrow '" + arr.name + "' has an undeclared endpoint");
      if (arr.name.empty()) arr.name = "a" + std::to_string(a);
      if (!seen.insert(arr.name).second)
        throw std::invalid_argument("duplicate arrow name '" + arr.name + "'");
      out_[arr.source].push_back(a);
      in_[arr.target].push_back(a);
    }
  }

  std::size_t num_vertices() const { return vertex_names_.size(); }
  std::size_t num_arrows() const { return arrows_.size(); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(ArrowId a) const { return arrows_.at(a); }
  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }

  /// Arrows starting at v (the set v^+), by increasing id.
  const std::vector<ArrowId>& out_arrows(VertexId v) const { return out_.at(v); }
  /// Arrows ending at v (the set v^-), by increasing id.
  const std::vector<ArrowId>& in_arrows(VertexId v) const { return in_.at(v); }

  std::optional<ArrowId> find_arrow(const std::string& name) const {
    for (ArrowId a = 0; a < arrows_.size(); ++a)
      if (arrows_[a].name == name) return a;
    return std::nullopt;
  }
  std::optional<VertexId> find_vertex(const std::string& name) const {
    for (VertexId v = 0; v < vertex_names_.size(); ++v)
      if (vertex_names_[v] == name) return v;
    return std::nullopt;
  }

  bool has_arrow(VertexId from, VertexId to) const {
    return std::any_of(out_.at(from).begin(), out_.at(from).end(),
                       [&](ArrowId a) { return arrows_[a].target == to; });
  }

  bool operator==(const Quiver& o) const {
    return vertex_names_ == o.vertex_names_ && arrows_ == o.arrows_;
  }

 private:
  std::vector<std::string> vertex_names_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<ArrowId>> out_;
  std::vector<std::vector<ArrowId>> in_;
};

// ---------------------------------------------------------------------------
// Validation and vertex profiles
// ---------------------------------------------------------------------------

struct Violation {
  enum class Kind { Empty, Disconnected, OutDegree, InDegree };
  Kind kind;
  std::optional<VertexId> vertex;
  std::string message;
};

inline bool is_connected(const Quiver& q) {
  const std::size_t n = q.num_vertices();
  if (n == 0) return false;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& a : q.arrows()) parent[find(a.source)] = find(a.target);
  const auto root = find(0);
  for (std::size_t v = 1; v < n; ++v)
    if (find(v) != root) return false;
  return true;
}

/// Empty iff q is nonempty, connected and, when `biserial` is set, has at most
/// two arrows entering and two arrows leaving every vertex.
inline std::vector<Violation> validate(const Quiver& q, bool biserial) {
  std::vector<Violation> out;
  if (q.num_vertices() == 0) {
    out.push_back({Violation::Kind::Empty, std::nullopt, "quiver has no vertices"});
    return out;
  }
  if (!is_connected(q))
    out.push_back({Violation::Kind::Disconnected, std::nullopt, "quiver is not connected"});
  if (biserial) {
    for (VertexId v = 0; v < q.num_vertices(); ++v) {
      if (q.out_arrows(v).size() > 2)
        out.push_back({Violation::Kind::OutDegree, v,
                       "vertex " + q.vertex_name(v) + " has |i^+| = " +
                           std::to_string(q.out_arrows(v).size())});
      if (q.in_arrows(v).size() > 2)
        out.push_back({Violation::Kind::InDegree, v,
                       "vertex " + q.vertex_name(v) + " has |i^-| = " +
                           std::to_string(q.in_arrows(v).size())});
    }
  }
  return out;
}

enum class Regularity { OneRegular, TwoRegular, OneTwo, TwoOne, Other };

inline const char* to_string(Regularity r) {
  switch (r) {
    case Regularity::OneRegular: return "1-regular";
    case Regularity::TwoRegular: return "2-regular";
    case Regularity::OneTwo: return "(1,2)";
    case Regularity::TwoOne: return "(2,1)";
    case Regularity::Other: return "other";
  }
  return "other";
}

struct VertexProfile {
  std::size_t indegree = 0;
  std::size_t outdegree = 0;
  Regularity regularity = Regularity::Other;
};

inline Regularity classify_degrees(std::size_t in, std::size_t out) {
  if (in == 1 && out == 1) return Regularity::OneRegular;
  if (in == 2 && out == 2) return Regularity::TwoRegular;
  if (in == 1 && out == 2) return Regularity::OneTwo;
  if (in == 2 && out == 1) return Regularity::TwoOne;
  return Regularity::Other;
}

inline VertexProfile vertex_profile(const Quiver& q, VertexId v) {
  if (v >= q.num_vertices()) throw std::out_of_range("unknown vertex id " + std::to_string(v));
  VertexProfile p;
  p.indegree = q.in_arrows(v).size();
  p.outdegree = q.out_arrows(v).size();
  p.regularity = classify_degrees(p.indegree, p.outdegree);
  return p;
}

// ---------------------------------------------------------------------------
// Forbidden patterns
// ---------------------------------------------------------------------------

/// Arrows alpha: i -> j that are the only arrow leaving i and the only arrow
/// entering j.
inline std::vector<ArrowId> find_isolated_arrows(const Quiver& q) {
  std::vector<ArrowId> out;
  for (ArrowId a = 0; a < q.num_arrows(); ++a) {
    const auto& arr = q.arrow(a);
    if (q.out_arrows(arr.source).size() == 1 && q.in_arrows(arr.target).size() == 1) out.push_back(a);
  }
  return out;
}

struct PatternMatch {
  VertexId vertex;
  bool dual = false;
  /// Primary orientation: {out-arrow i->j, in-arrow j->i, in-arrow t->i}.
  /// Dual orientation:    {in-arrow j->i, out-arrow i->j, out-arrow i->t}.
  std::array<ArrowId, 3> arrows{};
};

/// Vertices i whose incident arrows are exactly one arrow i->j, one arrow j->i
/// and one arrow t->i with t != j, and the mirrored pattern. A loop at i may
/// play the role of both i->j and j->i (j = i).
inline std::vector<PatternMatch> find_return_patterns(const Quiver& q) {
  std::vector<PatternMatch> out;
  for (VertexId i = 0; i < q.num_vertices(); ++i) {
    const auto& outs = q.out_arrows(i);
    const auto& ins = q.in_arrows(i);
    if (outs.size() == 1 && ins.size() == 2) {
      const ArrowId a = outs[0];
      const VertexId j = q.arrow(a).target;
      for (int k = 0; k < 2; ++k) {
        const ArrowId back = ins[k], other = ins[1 - k];
        if (q.arrow(back).source == j && q.arrow(other).source != j) {
          out.push_back({i, false, {a, back, other}});
          break;
        }
      }
    } else if (outs.size() == 2 && ins.size() == 1) {
      const ArrowId a = ins[0];
      const VertexId j = q.arrow(a).source;
      for (int k = 0; k < 2; ++k) {
        const ArrowId back = outs[k], other = outs[1 - k];
        if (q.arrow(back).target == j && q.arrow(other).target != j) {
          out.push_back({i, true, {a, back, other}});
          break;
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Triangles and squares
// ---------------------------------------------------------------------------

/// Oriented 3-cycle of distinct non-loop arrows, stored in path order and
/// rotated so the smallest arrow id comes first.
struct Triangle {
  std::array<ArrowId, 3> arrows{};
  bool operator==(const Triangle&) const = default;
  auto operator<=>(const Triangle&) const = default;
};

/// Oriented 4-cycle of distinct non-loop arrows, same conventions as Triangle.
struct Square {
  std::array<ArrowId, 4> arrows{};
  bool operator==(const Square&) const = default;
  auto operator<=>(const Square&) const = default;
};

namespace detail {

template <std::size_t N>
void enumerate_cycles(const Quiver& q, std::vector<std::array<ArrowId, N>>& out) {
  std::array<ArrowId, N> cur{};
  std::function<void(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == N) {
      if (q.arrow(cur[N - 1]).target == q.arrow(cur[0]).source) out.push_back(cur);
      return;
    }
    for (ArrowId a : q.out_arrows(q.arrow(cur[depth - 1]).target)) {
      if (a <= cur[0] || q.arrow(a).is_loop()) continue;
      if (std::find(cur.begin(), cur.begin() + depth, a) != cur.begin() + depth) continue;
      cur[depth] = a;
      extend(depth + 1);
    }
  };
  for (ArrowId a = 0; a < q.num_arrows(); ++a) {
    if (q.arrow(a).is_loop()) continue;
    cur[0] = a;
    extend(1);
  }
}

}  // namespace detail

inline std::vector<Triangle> enumerate_triangles(const Quiver& q) {
  std::vector<std::array<ArrowId, 3>> raw;
  detail::enumerate_cycles<3>(q, raw);
  std::vector<Triangle> out;
  for (const auto& c : raw) out.push_back(Triangle{c});
  return out;
}

inline std::vector<Square> enumerate_squares(const Quiver& q) {
  std::vector<std::array<ArrowId, 4>> raw;
  detail::enumerate_cycles<4>(q, raw);
  std::vector<Square> out;
  for (const auto& c : raw) out.push_back(Square{c});
  return out;
}

struct OneVertexTriangleViolation {
  Triangle triangle;
  VertexId one_regular_vertex;
  std::vector<VertexId> offending;  // other triangle vertices that are not 2-regular
};

/// A 1-regular vertex lying on a triangle forces the other two triangle
/// vertices to be 2-regular; returns each triangle/vertex where this fails.
inline std::vector<OneVertexTriangleViolation> find_one_vertex_triangle_violations(const Quiver& q) {
  std::vector<OneVertexTriangleViolation> out;
  for (const auto& t : enumerate_triangles(q)) {
    std::array<VertexId, 3> verts{};
    for (int k = 0; k < 3; ++k) verts[k] = q.arrow(t.arrows[k]).source;
    for (int k = 0; k < 3; ++k) {
      if (vertex_profile(q, verts[k]).regularity != Regularity::OneRegular) continue;
      std::vector<VertexId> bad;
      for (int m = 0; m < 3; ++m)
        if (m != k && vertex_profile(q, verts[m]).regularity != Regularity::TwoRegular)
          bad.push_back(verts[m]);
      if (!bad.empty()) out.push_back({t, verts[k], bad});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonical form
// ---------------------------------------------------------------------------

/// Arrow-count matrix: counts[u][v] = number of arrows u -> v.
inline std::vector<std::vector<std::size_t>> adjacency_counts(const Quiver& q) {
  const std::size_t n = q.num_vertices();
  std::vector<std::vector<std::size_t>> m(n, std::vector<std::size_t>(n, 0));
  for (const auto& a : q.arrows()) ++m[a.source][a.target];
  return m;
}

namespace detail {

/// Colour refinement with canonically numbered colours: colour classes are
/// isomorphism invariant and ordered by their signatures.
inline std::vector<std::size_t> refine_colours(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  std::vector<std::size_t> colour(n, 0);
  using Sig = std::vector<std::size_t>;
  auto recolour = [&](const std::vector<Sig>& sigs) {
    std::vector<Sig> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> c(n);
    for (std::size_t v = 0; v < n; ++v)
      c[v] = std::lower_bound(sorted.begin(), sorted.end(), sigs[v]) - sorted.begin();
    return std::make_pair(c, sorted.size());
  };
  std::vector<Sig> sigs(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t in = 0, out = 0;
    for (std::size_t u = 0; u < n; ++u) {
      out += adj[v][u];
      in += adj[u][v];
    }
    sigs[v] = {in, out, adj[v][v]};
  }
  auto [c, classes] = recolour(sigs);
  colour = c;
  while (true) {
    for (std::size_t v = 0; v < n; ++v) {
      Sig s{colour[v]};
      std::vector<std::array<std::size_t, 3>> nb;
      for (std::size_t u = 0; u < n; ++u)
        if (adj[v][u] || adj[u][v]) nb.push_back({colour[u], adj[v][u], adj[u][v]});
      std::sort(nb.begin(), nb.end());
      for (const auto& e : nb) s.insert(s.end(), e.begin(), e.end());
      sigs[v] = std::move(s);
    }
    auto [nc, ncls] = recolour(sigs);
    colour = nc;
    if (ncls == classes) break;
    classes = ncls;
  }
  return colour;
}

}  // namespace detail

/// Byte string that is invariant under vertex/arrow relabelling and separates
/// non-isomorphic quivers. Computed as the lexicographically least arrow-count
/// encoding over all vertex orders compatible with a canonical colour
/// refinement.
inline std::string canonical_form(const Quiver& q) {
  const auto adj = adjacency_counts(q);
  const std::size_t n = adj.size();
  if (n > 255) throw std::invalid_argument("canonical_form supports at most 255 vertices");
  const auto colour = detail::refine_colours(adj);

  std::vector<std::vector<std::size_t>> cells;
  for (std::size_t c = 0;; ++c) {
    std::vector<std::size_t> cell;
    for (std::size_t v = 0; v < n; ++v)
      if (colour[v] == c) cell.push_back(v);
    if (cell.empty()) break;
    cells.push_back(std::move(cell));
  }

  auto encode = [&](const std::vector<std::size_t>& order) {
    std::string s;
    s.reserve(1 + n * n);
    s.push_back(static_cast<char>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        auto c = adj[order[a]][order[b]];
        if (c > 255) throw std::invalid_argument("too many parallel arrows for canonical_form");
        s.push_back(static_cast<char>(static_cast<unsigned char>(c)));
      }
    return s;
  };

  std::optional<std::string> best;
  std::vector<std::size_t> order;
  std::function<void(std::size_t)> go = [&](std::size_t cell_idx) {
    if (cell_idx == cells.size()) {
      auto e = encode(order);
      if (!best || e < *best) best = std::move(e);
      return;
    }
    auto cell = cells[cell_idx];
    std::sort(cell.begin(), cell.end());
    do {
      order.insert(order.end(), cell.begin(), cell.end());
      go(cell_idx + 1);
      order.resize(order.size() - cell.size());
    } while (std::next_permutation(cell.begin(), cell.end()));
  };
  go(0);
  if (!best) best = encode({});
  return *best;
}

inline std::string to_hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

/// Quiver on vertices 0..n-1 with counts[u][v] arrows u -> v; arrows are
/// numbered in row-major order and named a1, a2, ...
inline Quiver quiver_from_counts(const std::vector<std::vector<std::size_t>>& counts) {
  std::vector<Arrow> arrows;
  for (std::size_t u = 0; u < counts.size(); ++u)
    for (std::size_t v = 0; v < counts.size(); ++v)
      for (std::size_t k = 0; k < counts[u][v]; ++k)
        arrows.push_back({"a" + std::to_string(arrows.size() + 1), u, v});
  return Quiver(counts.size(), std::move(arrows));
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

enum class QuiverFilter { IsolatedArrow, ReturnPattern, OneVertexTriangle };

inline const char* to_string(QuiverFilter f) {
  switch (f) {
    case QuiverFilter::IsolatedArrow: return "L21";
    case QuiverFilter::ReturnPattern: return "L22";
    case QuiverFilter::OneVertexTriangle: return "triangle-1-vertex";
  }
  return "?";
}

inline std::optional<QuiverFilter> parse_filter(const std::string& s) {
  if (s == "lemma21" || s == "L21") return QuiverFilter::IsolatedArrow;
  if (s == "lemma22" || s == "L22") return QuiverFilter::ReturnPattern;
  if (s == "triangle-1-vertex" || s == "ONE_VERTEX_TRIANGLE") return QuiverFilter::OneVertexTriangle;
  return std::nullopt;
}

inline bool passes_filter(const Quiver& q, QuiverFilter f) {
  switch (f) {
    case QuiverFilter::IsolatedArrow: return find_isolated_arrows(q).empty();
    case QuiverFilter::ReturnPattern: return find_return_patterns(q).empty();
    case QuiverFilter::OneVertexTriangle: return find_one_vertex_triangle_violations(q).empty();
  }
  return true;
}

struct EnumerationOptions {
  std::size_t num_vertices = 1;
  std::optional<std::size_t> max_arrows;  // defaults to 2 * num_vertices
  std::vector<QuiverFilter> filters;
  std::size_t candidate_cap = 50'000'000;  // arrow-count matrices examined
};

struct EnumerationResult {
  std::vector<Quiver> quivers;  // survivors, sorted by canonical form
  std::size_t generated = 0;    // isomorphism classes before filtering
  std::vector<std::pair<QuiverFilter, std::size_t>> surviving_after;  // cumulative
};

class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every connected quiver on n vertices, up to isomorphism, with
/// 1 <= |i^-|, |i^+| <= 2 at each vertex and at most max_arrows arrows, that
/// passes the requested filters (applied in the given order).
inline EnumerationResult enumerate_biserial_quivers(const EnumerationOptions& opts) {
  const std::size_t n = opts.num_vertices;
  if (n == 0) throw std::invalid_argument("enumeration needs at least one vertex");
  const std::size_t max_arrows = opts.max_arrows.value_or(2 * n);

  // All rows with entry sum 1 or 2.
  std::vector<std::vector<std::size_t>> rows;
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<std::size_t> r(n, 0);
    r[a] = 1;
    rows.push_back(r);
    r[a] = 2;
    rows.push_back(r);
    for (std::size_t b = a + 1; b < n; ++b) {
      std::vector<std::size_t> r2(n, 0);
      r2[a] = 1;
      r2[b] = 1;
      rows.push_back(r2);
    }
  }

  std::map<std::string, Quiver> classes;
  std::vector<std::vector<std::size_t>> counts(n);
  std::vector<std::size_t> colsum(n, 0);
  std::size_t examined = 0;
  std::function<void(std::size_t, std::size_t)> go = [&](std::size_t u, std::size_t total) {
    if (u == n) {
      if (++examined > opts.candidate_cap)
        throw ResourceLimitExceeded("enumeration candidate cap exceeded");
      for (auto c : colsum)
        if (c < 1) return;
      Quiver q = quiver_from_counts(counts);
      if (!is_connected(q)) return;
      auto key = canonical_form(q);
      classes.try_emplace(std::move(key), std::move(q));
      return;
    }
    for (const auto& r : rows) {
      std::size_t s = std::accumulate(r.begin(), r.end(), std::size_t{0});
      if (total + s > max_arrows) continue;
      bool ok = true;
      for (std::size_t v = 0; v < n && ok; ++v) ok = colsum[v] + r[v] <= 2;
      if (!ok) continue;
      // Remaining rows add at least one arrow each, and must bring every column up to 1.
      for (std::size_t v = 0; v < n; ++v) colsum[v] += r[v];
      std::size_t missing = 0;
      for (auto c : colsum) missing += c == 0;
      if (missing <= 2 * (n - u - 1)) {
        counts[u] = r;
        go(u + 1, total + s);
      }
      for (std::size_t v = 0; v < n; ++v) colsum[v] -= r[v];
    }
  };
  go(0, 0);

  EnumerationResult res;
  res.generated = classes.size();
  std::vector<Quiver> current;
  for (auto& [k, q] : classes) current.push_back(std::move(q));
  for (auto f : opts.filters) {
    std::vector<Quiver> kept;
    for (auto& q : current)
      if (passes_filter(q, f)) kept.push_back(std::move(q));
    current = std::move(kept);
    res.surviving_after.emplace_back(f, current.size());
  }
  res.quivers = std::move(current);
  return res;
}

}  // namespace bq
