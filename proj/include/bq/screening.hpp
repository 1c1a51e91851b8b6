#pragma once

// Necessary conditions for tame symmetric algebras of period four with a
// biserial Gabriel quiver, run as independent checks with witnesses.
//
// A pass only means that no obstruction was found. Checks built on the
// "p occurs in a minimal relation" test are relative to the presentation as
// given; no other choice of arrows is searched.

#include "bq/algebra.hpp"
#include "bq/module.hpp"
#include "bq/quiver.hpp"
#include "bq/relations.hpp"
#include "bq/sequence.hpp"
#include "bq/symmetric.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace bq {

using Json = nlohmann::ordered_json;

enum class CheckId {
  L21,
  L22,
  ONE_VERTEX_TRIANGLE,
  SYMMETRIC,
  PERIOD4,
  DIMVEC_EQ,
  DIMVEC_STRICT,
  TRIANGLE_FORCED,
  TRIANGLE_RN,
  SQUARE_FORCED,
  SQUARE_LEMMA,
  PATH4_REDUCTION,
  VERTEX_TYPE_R,
  WILD_FACTOR,
};

inline constexpr std::array<CheckId, 14> kAllChecks = {
    CheckId::L21,           CheckId::L22,           CheckId::ONE_VERTEX_TRIANGLE, CheckId::SYMMETRIC,
    CheckId::PERIOD4,       CheckId::DIMVEC_EQ,     CheckId::DIMVEC_STRICT,       CheckId::TRIANGLE_FORCED,
    CheckId::TRIANGLE_RN,   CheckId::SQUARE_FORCED, CheckId::SQUARE_LEMMA,        CheckId::PATH4_REDUCTION,
    CheckId::VERTEX_TYPE_R, CheckId::WILD_FACTOR,
};

inline const char* to_string(CheckId id) {
  switch (id) {
    case CheckId::L21: return "L21";
    case CheckId::L22: return "L22";
    case CheckId::ONE_VERTEX_TRIANGLE: return "ONE_VERTEX_TRIANGLE";
    case CheckId::SYMMETRIC: return "SYMMETRIC";
    case CheckId::PERIOD4: return "PERIOD4";
    case CheckId::DIMVEC_EQ: return "DIMVEC_EQ";
    case CheckId::DIMVEC_STRICT: return "DIMVEC_STRICT";
    case CheckId::TRIANGLE_FORCED: return "TRIANGLE_FORCED";
    case CheckId::TRIANGLE_RN: return "TRIANGLE_RN";
    case CheckId::SQUARE_FORCED: return "SQUARE_FORCED";
    case CheckId::SQUARE_LEMMA: return "SQUARE_LEMMA";
    case CheckId::PATH4_REDUCTION: return "PATH4_REDUCTION";
    case CheckId::VERTEX_TYPE_R: return "VERTEX_TYPE_R";
    case CheckId::WILD_FACTOR: return "WILD_FACTOR";
  }
  return "?";
}

/// The statement each check tests.
inline const char* anchor(CheckId id) {
  switch (id) {
    case CheckId::L21: return "no arrow i->j that is both the only arrow leaving i and the only arrow entering j";
    case CheckId::L22: return "no vertex whose only arrows are i->j, j->i and one more arrow t->i (or the dual)";
    case CheckId::ONE_VERTEX_TRIANGLE: return "the other two vertices of a triangle through a 1-regular vertex are 2-regular";
    case CheckId::SYMMETRIC: return "the algebra admits a nondegenerate symmetric associative form";
    case CheckId::PERIOD4: return "every simple module has syzygy period exactly 4";
    case CheckId::DIMVEC_EQ: return "p_i^+ = p_i^- at every vertex";
    case CheckId::DIMVEC_STRICT: return "|p-hat_i| > |p_i| at every vertex";
    case CheckId::TRIANGLE_FORCED: return "a composite alpha*beta: i->j->k in a minimal relation forces an arrow k->i";
    case CheckId::TRIANGLE_RN: return "around a triangle, a composite outside the minimal relations forces the next one outside too";
    case CheckId::SQUARE_FORCED: return "alpha*beta*gamma in a minimal relation with a length-2 part outside forces an arrow closing the square";
    case CheckId::SQUARE_LEMMA: return "around a square, alpha*beta*gamma in a minimal relation forces beta*gamma*delta in one";
    case CheckId::PATH4_REDUCTION: return "delta*alpha*beta*gamma in a minimal relation through a vertex with one outgoing arrow forces alpha*beta*gamma in one";
    case CheckId::VERTEX_TYPE_R: return "no non-regular vertex has both composites through it in minimal relations";
    case CheckId::WILD_FACTOR: return "no hereditary factor 1=>2->x with both composites outside the minimal relations";
  }
  return "";
}

enum class Status { Pass, Fail, Inapplicable, Inconclusive };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inapplicable: return "inapplicable";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct CheckResult {
  CheckResult(CheckId i, Status s = Status::Pass, Json w = nullptr) : id(i), status(s), witness(std::move(w)) {}
  CheckId id;
  Status status;
  Json witness;  // null when there is nothing to report
};

struct ScreeningOptions {
  std::size_t max_period = 8;
  /// Run the dimension-vector checks even when some simple does not have period 4.
  bool assume_period4 = false;
};

struct ScreeningReport {
  std::string input_hash;
  Json presentation = Json::object();
  std::vector<CheckResult> checks;

  const CheckResult& get(CheckId id) const {
    for (const auto& c : checks)
      if (c.id == id) return c;
    throw std::out_of_range("check not in report");
  }
  bool any_fail() const {
    return std::any_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == Status::Fail; });
  }

  Json to_json() const {
    Json j;
    j["input_hash"] = input_hash;
    j["presentation"] = presentation;
    Json arr = Json::array();
    for (const auto& c : checks) {
      Json e;
      e["id"] = to_string(c.id);
      e["status"] = to_string(c.status);
      e["witness"] = c.witness;
      e["anchor"] = anchor(c.id);
      arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    return j;
  }
};

// ---------------------------------------------------------------------------
// Witness helpers
// ---------------------------------------------------------------------------

inline Json vertex_json(const Quiver& q, VertexId v) { return q.vertex_name(v); }
inline Json arrow_json(const Quiver& q, ArrowId a) { return q.arrow(a).name; }

inline Json arrows_json(const Quiver& q, const std::vector<ArrowId>& as) {
  Json j = Json::array();
  for (ArrowId a : as) j.push_back(arrow_json(q, a));
  return j;
}

inline Json dimvec_json(const Quiver& q, const std::vector<std::size_t>& d) {
  Json j = Json::object();
  for (VertexId v = 0; v < d.size(); ++v) j[q.vertex_name(v)] = d[v];
  return j;
}

template <ExactField F>
Json element_json(const F& f, const Quiver& q, const AlgebraElement<F>& x) {
  return element_to_string(f, q, x);
}

// ---------------------------------------------------------------------------
// Quiver-level checks
// ---------------------------------------------------------------------------

inline std::vector<CheckResult> check_quiver_level(const Quiver& q) {
  std::vector<CheckResult> out;
  {
    CheckResult r{CheckId::L21};
    auto v = find_isolated_arrows(q);
    if (!v.empty()) {
      r.status = Status::Fail;
      Json w = Json::array();
      for (ArrowId a : v) {
        Json e;
        e["arrow"] = arrow_json(q, a);
        e["from"] = vertex_json(q, q.arrow(a).source);
        e["to"] = vertex_json(q, q.arrow(a).target);
        w.push_back(std::move(e));
      }
      r.witness = std::move(w);
    }
    out.push_back(std::move(r));
  }
  {
    CheckResult r{CheckId::L22};
    auto v = find_return_patterns(q);
    if (!v.empty()) {
      r.status = Status::Fail;
      Json w = Json::array();
      for (const auto& m : v) {
        Json e;
        e["vertex"] = vertex_json(q, m.vertex);
        e["dual"] = m.dual;
        e["arrows"] = arrows_json(q, {m.arrows.begin(), m.arrows.end()});
        w.push_back(std::move(e));
      }
      r.witness = std::move(w);
    }
    out.push_back(std::move(r));
  }
  {
    CheckResult r{CheckId::ONE_VERTEX_TRIANGLE};
    auto v = find_one_vertex_triangle_violations(q);
    if (!v.empty()) {
      r.status = Status::Fail;
      Json w = Json::array();
      for (const auto& m : v) {
        Json e;
        e["triangle"] = arrows_json(q, {m.triangle.arrows.begin(), m.triangle.arrows.end()});
        e["one_regular_vertex"] = vertex_json(q, m.one_regular_vertex);
        Json bad = Json::array();
        for (VertexId x : m.offending) bad.push_back(vertex_json(q, x));
        e["not_2_regular"] = std::move(bad);
        w.push_back(std::move(e));
      }
      r.witness = std::move(w);
    }
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Algebra-level checks
// ---------------------------------------------------------------------------

namespace detail {

inline PathWord arrows_path(const Quiver& q, const std::vector<ArrowId>& as) {
  return make_path(q, q.arrow(as.front()).source, as);
}

/// Safety margin: verdicts on long paths close to the degree bound
/// are not trusted for a failure.
inline bool near_bound(std::size_t length, std::size_t bound) {
  return length >= 3 && length + 2 >= bound;
}

inline void add_failure(CheckResult& r, Json item, bool inconclusive) {
  if (r.witness.is_null()) r.witness = Json::array();
  item["inconclusive"] = inconclusive;
  r.witness.push_back(std::move(item));
  if (!inconclusive)
    r.status = Status::Fail;
  else if (r.status != Status::Fail)
    r.status = Status::Inconclusive;
}

}  // namespace detail

template <ExactField F>
struct TriangleClass {
  Triangle triangle;
  std::array<bool, 3> precedes{};  // composites a0a1, a1a2, a2a0
  char cls = 'N';                  // 'R', 'N' or 'M' (mixed)
  std::optional<std::size_t> turning_pair;  // k with composite k outside and k+1 inside
};

template <ExactField F>
std::vector<TriangleClass<F>> classify_triangles(const PresentedAlgebra<F>& A, const MinimalRelations<F>& mr) {
  const Quiver& q = A.quiver();
  std::vector<TriangleClass<F>> out;
  for (const auto& t : enumerate_triangles(q)) {
    TriangleClass<F> c;
    c.triangle = t;
    for (std::size_t k = 0; k < 3; ++k)
      c.precedes[k] = mr.precedes(detail::arrows_path(q, {t.arrows[k], t.arrows[(k + 1) % 3]}));
    const int count = c.precedes[0] + c.precedes[1] + c.precedes[2];
    c.cls = count == 3 ? 'R' : count == 0 ? 'N' : 'M';
    for (std::size_t k = 0; k < 3 && !c.turning_pair; ++k)
      if (!c.precedes[k] && c.precedes[(k + 1) % 3]) c.turning_pair = k;
    // Mixed must coincide with a consecutive (outside, inside) pair.
    if ((c.cls == 'M') != c.turning_pair.has_value())
      throw std::logic_error("triangle classification is inconsistent with its composites");
    out.push_back(c);
  }
  return out;
}

template <ExactField F>
std::vector<CheckResult> check_triangles(const PresentedAlgebra<F>& A, const MinimalRelations<F>& mr) {
  const Quiver& q = A.quiver();
  CheckResult forced{CheckId::TRIANGLE_FORCED};
  for (ArrowId a = 0; a < q.num_arrows(); ++a)
    for (ArrowId b : q.out_arrows(q.arrow(a).target)) {
      const VertexId i = q.arrow(a).source, k = q.arrow(b).target;
      if (!mr.precedes(detail::arrows_path(q, {a, b}))) continue;
      if (q.has_arrow(k, i)) continue;
      Json e;
      e["path"] = arrows_json(q, {a, b});
      e["missing_arrow"] = {{"from", vertex_json(q, k)}, {"to", vertex_json(q, i)}};
      detail::add_failure(forced, std::move(e), false);
    }

  CheckResult rn{CheckId::TRIANGLE_RN};
  Json info = Json::array();
  for (const auto& c : classify_triangles(A, mr)) {
    const auto& t = c.triangle.arrows;
    Json e;
    e["triangle"] = arrows_json(q, {t.begin(), t.end()});
    e["class"] = c.cls == 'R' ? "R" : c.cls == 'N' ? "N" : "mixed";
    Json comps = Json::array();
    for (std::size_t k = 0; k < 3; ++k) {
      Json x;
      x["path"] = arrows_json(q, {t[k], t[(k + 1) % 3]});
      x["in_minimal_relation"] = c.precedes[k];
      comps.push_back(std::move(x));
    }
    e["composites"] = std::move(comps);
    // Triangles through a double arrow come in parallel pairs on the same vertices.
    bool doubled = false;
    for (ArrowId a : t)
      for (ArrowId o : q.out_arrows(q.arrow(a).source))
        doubled = doubled || (o != a && q.arrow(o).target == q.arrow(a).target);
    e["through_double_arrow"] = doubled;
    if (c.cls == 'M') {
      const std::size_t k = *c.turning_pair;
      e["outside_then_inside"] = Json::array({arrows_json(q, {t[k], t[(k + 1) % 3]}),
                                  arrows_json(q, {t[(k + 1) % 3], t[(k + 2) % 3]})});
      detail::add_failure(rn, std::move(e), false);
    } else {
      info.push_back(std::move(e));
    }
  }
  if (rn.status == Status::Pass && !info.empty()) rn.witness = std::move(info);
  return {std::move(forced), std::move(rn)};
}

template <ExactField F>
std::vector<CheckResult> check_squares(const PresentedAlgebra<F>& A, const MinimalRelations<F>& mr) {
  const Quiver& q = A.quiver();
  const std::size_t N = A.degree_bound();
  auto prec = [&](std::vector<ArrowId> as) { return mr.precedes(detail::arrows_path(q, as)); };

  CheckResult forced{CheckId::SQUARE_FORCED};
  CheckResult lemma{CheckId::SQUARE_LEMMA};
  CheckResult path4{CheckId::PATH4_REDUCTION};

  for (ArrowId a = 0; a < q.num_arrows(); ++a)
    for (ArrowId b : q.out_arrows(q.arrow(a).target))
      for (ArrowId c : q.out_arrows(q.arrow(b).target)) {
        const VertexId i = q.arrow(a).source, l = q.arrow(c).target;
        if (!prec({a, b, c})) continue;
        if (prec({a, b}) && prec({b, c})) continue;
        if (q.has_arrow(l, i)) continue;
        Json e;
        e["path"] = arrows_json(q, {a, b, c});
        e["missing_arrow"] = {{"from", vertex_json(q, l)}, {"to", vertex_json(q, i)}};
        detail::add_failure(forced, std::move(e), detail::near_bound(3, N));
      }

  for (const auto& s : enumerate_squares(q)) {
    const auto& t = s.arrows;
    for (std::size_t k = 0; k < 4; ++k) {
      std::vector<ArrowId> first{t[k], t[(k + 1) % 4], t[(k + 2) % 4]};
      std::vector<ArrowId> next{t[(k + 1) % 4], t[(k + 2) % 4], t[(k + 3) % 4]};
      if (prec(first) && !prec(next)) {
        Json e;
        e["square"] = arrows_json(q, {t.begin(), t.end()});
        e["in_minimal_relation"] = arrows_json(q, first);
        e["not_in_minimal_relation"] = arrows_json(q, next);
        detail::add_failure(lemma, std::move(e), detail::near_bound(3, N));
      }
    }
  }

  for (ArrowId d = 0; d < q.num_arrows(); ++d)
    for (ArrowId a : q.out_arrows(q.arrow(d).target))
      for (ArrowId b : q.out_arrows(q.arrow(a).target)) {
        const VertexId k = q.arrow(a).target;
        if (q.out_arrows(k).size() != 1) continue;
        for (ArrowId c : q.out_arrows(q.arrow(b).target)) {
          if (prec({d, a}) || prec({a, b}) || prec({b, c})) continue;
          if (!prec({d, a, b, c}) || prec({a, b, c})) continue;
          Json e;
          e["path"] = arrows_json(q, {d, a, b, c});
          e["middle_vertex"] = vertex_json(q, k);
          e["not_in_minimal_relation"] = arrows_json(q, {a, b, c});
          detail::add_failure(path4, std::move(e), detail::near_bound(4, N));
        }
      }
  return {std::move(forced), std::move(lemma), std::move(path4)};
}

template <ExactField F>
CheckResult check_vertex_types(const PresentedAlgebra<F>& A, const MinimalRelations<F>& mr) {
  const Quiver& q = A.quiver();
  CheckResult r{CheckId::VERTEX_TYPE_R};
  Json info = Json::array();
  for (VertexId v = 0; v < q.num_vertices(); ++v) {
    const auto prof = vertex_profile(q, v);
    std::vector<std::vector<ArrowId>> comps;
    if (prof.regularity == Regularity::OneTwo) {
      const ArrowId in = q.in_arrows(v)[0];
      for (ArrowId o : q.out_arrows(v)) comps.push_back({in, o});
    } else if (prof.regularity == Regularity::TwoOne) {
      const ArrowId out = q.out_arrows(v)[0];
      for (ArrowId i : q.in_arrows(v)) comps.push_back({i, out});
    } else {
      continue;
    }
    const bool p0 = mr.precedes(detail::arrows_path(q, comps[0]));
    const bool p1 = mr.precedes(detail::arrows_path(q, comps[1]));
    const char* type = p0 && p1 ? "R" : (!p0 && !p1 ? "N" : "mixed");
    Json e;
    e["vertex"] = vertex_json(q, v);
    e["kind"] = to_string(prof.regularity);
    e["type"] = type;
    // Proper: the two outer endpoints differ.
    const VertexId e0 = prof.regularity == Regularity::OneTwo ? q.arrow(comps[0][1]).target : q.arrow(comps[0][0]).source;
    const VertexId e1 = prof.regularity == Regularity::OneTwo ? q.arrow(comps[1][1]).target : q.arrow(comps[1][0]).source;
    e["proper"] = e0 != e1;
    e["composites"] = Json::array({arrows_json(q, comps[0]), arrows_json(q, comps[1])});
    if (p0 && p1)
      detail::add_failure(r, std::move(e), false);
    else
      info.push_back(std::move(e));
  }
  if (r.status == Status::Pass && !info.empty()) r.witness = std::move(info);
  return r;
}

template <ExactField F>
CheckResult check_wild_factor(const PresentedAlgebra<F>& A, const MinimalRelations<F>& mr) {
  const Quiver& q = A.quiver();
  CheckResult r{CheckId::WILD_FACTOR};
  for (VertexId u = 0; u < q.num_vertices(); ++u) {
    for (VertexId w = 0; w < q.num_vertices(); ++w) {
      if (u == w) continue;
      std::vector<ArrowId> par;
      for (ArrowId a : q.out_arrows(u))
        if (q.arrow(a).target == w) par.push_back(a);
      if (par.size() < 2) continue;
      for (std::size_t x = 0; x < par.size(); ++x)
        for (std::size_t y = x + 1; y < par.size(); ++y)
          for (ArrowId c : q.out_arrows(w)) {
            const VertexId t = q.arrow(c).target;
            if (t == u || t == w) continue;
            if (mr.precedes(detail::arrows_path(q, {par[x], c})) || mr.precedes(detail::arrows_path(q, {par[y], c})))
              continue;
            Json e;
            e["double_arrow"] = arrows_json(q, {par[x], par[y]});
            e["escaping_arrow"] = arrow_json(q, c);
            e["vertices"] = Json::array({vertex_json(q, u), vertex_json(q, w), vertex_json(q, t)});
            e["note"] = "tameness obstruction, not a representation-type decision";
            detail::add_failure(r, std::move(e), false);
          }
    }
  }
  return r;
}

/// p_i^+ and p_i^- from the Cartan matrix.
template <ExactField F>
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> flank_dimension_vectors(const PresentedAlgebra<F>& A,
                                                                                    VertexId i) {
  const Quiver& q = A.quiver();
  const auto C = A.cartan_matrix();
  std::vector<std::size_t> plus(q.num_vertices()), minus(q.num_vertices());
  for (ArrowId a : q.out_arrows(i))
    for (VertexId v = 0; v < plus.size(); ++v) plus[v] += C[q.arrow(a).target][v];
  for (ArrowId b : q.in_arrows(i))
    for (VertexId v = 0; v < minus.size(); ++v) minus[v] += C[q.arrow(b).source][v];
  return {plus, minus};
}

template <ExactField F>
std::vector<CheckResult> check_dimension_vectors(const PresentedAlgebra<F>& A) {
  const Quiver& q = A.quiver();
  const auto C = A.cartan_matrix();
  CheckResult eq{CheckId::DIMVEC_EQ}, strict{CheckId::DIMVEC_STRICT};
  auto norm = [](const std::vector<std::size_t>& v) { return std::accumulate(v.begin(), v.end(), std::size_t{0}); };
  for (VertexId i = 0; i < q.num_vertices(); ++i) {
    auto [plus, minus] = flank_dimension_vectors(A, i);
    if (plus != minus) {
      Json e;
      e["vertex"] = vertex_json(q, i);
      e["p_plus"] = dimvec_json(q, plus);
      e["p_minus"] = dimvec_json(q, minus);
      detail::add_failure(eq, std::move(e), false);
    }
    // p-hat is p_i^+ (equal to p_i^- when the sequence exists); both must exceed p_i.
    for (const auto* hat : {&plus, &minus}) {
      if (norm(*hat) > norm(C[i])) continue;
      Json e;
      e["vertex"] = vertex_json(q, i);
      e["p"] = dimvec_json(q, C[i]);
      e[hat == &plus ? "p_plus" : "p_minus"] = dimvec_json(q, *hat);
      detail::add_failure(strict, std::move(e), false);
    }
  }
  return {std::move(eq), std::move(strict)};
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

inline const char* kPresentationCaveat =
    "verdicts on minimal relations are relative to this presentation; a prime field stands in for an "
    "algebraically closed field; passing every check does not prove the algebra is tame, symmetric of period four";

template <ExactField F>
ScreeningReport run_pipeline(const Quiver& q, const PresentedAlgebra<F>* A, const ScreeningOptions& opts = {}) {
  ScreeningReport rep;
  Json& pres = rep.presentation;
  Json violations = Json::array();
  for (const auto& v : validate(q, true)) violations.push_back(v.message);
  pres["quiver_violations"] = std::move(violations);

  for (auto& c : check_quiver_level(q)) rep.checks.push_back(std::move(c));

  if (A == nullptr) {
    pres["field"] = nullptr;
    pres["degree_bound"] = nullptr;
    pres["arrow_adjustments"] = Json::array();
    pres["caveat"] = kPresentationCaveat;
    for (CheckId id : kAllChecks) {
      if (id == CheckId::L21 || id == CheckId::L22 || id == CheckId::ONE_VERTEX_TRIANGLE) continue;
      rep.checks.push_back({id, Status::Inapplicable, Json{{"reason", "no relations given"}}});
    }
    return rep;
  }

  const F& f = A->field();
  pres["field"] = f.name();
  pres["degree_bound"] = A->degree_bound();
  pres["dimension"] = A->dimension();
  pres["arrow_adjustments"] = Json::array();
  pres["caveat"] = kPresentationCaveat;

  // SYMMETRIC and PERIOD4 first.
  CheckResult sym{CheckId::SYMMETRIC};
  if (!symmetrizing_form(*A)) {
    sym.status = Status::Fail;
    sym.witness = Json{{"reason", "no symmetric functional gives a nondegenerate form"}};
  }

  CheckResult per{CheckId::PERIOD4};
  Json periods = Json::object();
  std::vector<VertexId> not4;
  for (VertexId v = 0; v < q.num_vertices(); ++v) {
    const auto pr = omega_period(*A, v, std::max<std::size_t>(opts.max_period, 4));
    if (pr.period)
      periods[q.vertex_name(v)] = *pr.period;
    else
      periods[q.vertex_name(v)] = pr.reason;
    if (pr.period != std::size_t{4}) not4.push_back(v);
  }
  per.witness = Json{{"periods", periods}};
  if (!not4.empty()) per.status = Status::Fail;

  std::vector<CheckResult> dims;
  if (not4.empty() || opts.assume_period4) {
    dims = check_dimension_vectors(*A);
    if (!not4.empty())
      for (auto& d : dims) {
        if (d.witness.is_null()) d.witness = Json::array();
        d.witness.push_back(Json{{"assumed_period4", true}});
      }
  } else {
    Json w{{"reason", "some simple does not have period 4"}, {"periods", periods}};
    dims.push_back({CheckId::DIMVEC_EQ, Status::Inapplicable, w});
    dims.push_back({CheckId::DIMVEC_STRICT, Status::Inapplicable, w});
  }

  // Arrow adjustments needed for the four-term sequences.
  if (not4.empty()) {
    for (VertexId v = 0; v < q.num_vertices(); ++v) {
      try {
        const auto seq = exact_sequence_data(*A, v);
        for (const auto& s : seq.substitutions)
          pres["arrow_adjustments"].push_back(Json{{"vertex", q.vertex_name(v)},
                                                   {"arrow", q.arrow(s.arrow).name},
                                                   {"replacement", element_to_string(f, q, s.replacement)}});
      } catch (const SequenceError& e) {
        pres["arrow_adjustments"].push_back(
            Json{{"vertex", q.vertex_name(v)}, {"error", to_string(e.kind())}, {"message", e.what()}});
      }
    }
  }

  rep.checks.push_back(std::move(sym));
  rep.checks.push_back(std::move(per));
  for (auto& d : dims) rep.checks.push_back(std::move(d));

  const MinimalRelations<F> mr(*A);
  for (auto& c : check_triangles(*A, mr)) rep.checks.push_back(std::move(c));
  for (auto& c : check_squares(*A, mr)) rep.checks.push_back(std::move(c));
  rep.checks.push_back(check_vertex_types(*A, mr));
  rep.checks.push_back(check_wild_factor(*A, mr));
  return rep;
}

}  // namespace bq
