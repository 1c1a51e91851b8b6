#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bq;

namespace {

using FP = PrimeField;

ScreeningReport screen(const std::string& name, ScreeningOptions opts = {}) {
  const auto doc = testing_support::load(name);
  opts.assume_period4 = opts.assume_period4 || doc.assume_period4;
  if (!doc.has_relations()) return run_pipeline<FP>(doc.quiver(), nullptr, opts);
  if (doc.resolved_field().kind == FieldSpec::Kind::Rational) {
    const auto A = build_algebra(doc, RationalField{});
    return run_pipeline(doc.quiver(), &A, opts);
  }
  const auto A = build_algebra(doc, FP(doc.resolved_field().prime));
  return run_pipeline(doc.quiver(), &A, opts);
}

Status status(const ScreeningReport& r, CheckId id) { return r.get(id).status; }

TEST(Screening, FixedCheckOrder) {
  const auto r = screen("quaternion.bq");
  ASSERT_EQ(r.checks.size(), kAllChecks.size());
  for (std::size_t k = 0; k < kAllChecks.size(); ++k) EXPECT_EQ(r.checks[k].id, kAllChecks[k]);
  const auto q = screen("return_pattern.bq");
  for (std::size_t k = 0; k < kAllChecks.size(); ++k) EXPECT_EQ(q.checks[k].id, kAllChecks[k]);
}

TEST(Screening, QuaternionPassesEverything) {
  const auto r = screen("quaternion.bq");
  for (const auto& c : r.checks) EXPECT_EQ(c.status, Status::Pass) << to_string(c.id);
  EXPECT_EQ(r.get(CheckId::PERIOD4).witness["periods"]["1"], 4);
}

TEST(Screening, NakayamaExcluded) {
  const auto r = screen("nakayama_2cycle.bq");
  EXPECT_EQ(status(r, CheckId::L21), Status::Fail);
  EXPECT_EQ(status(r, CheckId::PERIOD4), Status::Fail);
  EXPECT_EQ(r.get(CheckId::PERIOD4).witness["periods"]["1"], 2);
  EXPECT_EQ(r.get(CheckId::PERIOD4).witness["periods"]["2"], 2);
  EXPECT_EQ(status(r, CheckId::DIMVEC_EQ), Status::Inapplicable);
  EXPECT_TRUE(r.any_fail());
}

TEST(Screening, QuiverOnlyDocuments) {
  const auto r = screen("return_pattern.bq");
  EXPECT_EQ(status(r, CheckId::L22), Status::Fail);
  bool found = false;
  for (const auto& w : r.get(CheckId::L22).witness) found = found || (w["vertex"] == "i" && w["dual"] == false);
  EXPECT_TRUE(found);
  EXPECT_EQ(status(r, CheckId::SYMMETRIC), Status::Inapplicable);

  const auto d = screen("return_pattern_dual.bq");
  found = false;
  for (const auto& w : d.get(CheckId::L22).witness) found = found || (w["vertex"] == "i" && w["dual"] == true);
  EXPECT_TRUE(found);
}

std::string triangle_class(const ScreeningReport& r) {
  const auto& w = r.get(CheckId::TRIANGLE_RN).witness;
  return w.at(0).at("class").get<std::string>();
}

TEST(Screening, TriangleClasses) {
  EXPECT_EQ(triangle_class(screen("triangle_rad2.bq")), "R");
  EXPECT_EQ(triangle_class(screen("triangle_long.bq")), "N");
  const auto m = screen("triangle_mixed.bq");
  EXPECT_EQ(status(m, CheckId::TRIANGLE_RN), Status::Fail);
  EXPECT_EQ(triangle_class(m), "mixed");
  EXPECT_EQ(m.get(CheckId::TRIANGLE_RN).witness[0]["outside_then_inside"],
            Json::parse(R"([["c","a"],["a","b"]])"));
  const auto d = screen("triangle_double_arrow.bq");
  EXPECT_EQ(d.get(CheckId::TRIANGLE_RN).witness.size(), 2u);
  for (const auto& t : d.get(CheckId::TRIANGLE_RN).witness) EXPECT_EQ(t["through_double_arrow"], true);
}

TEST(Screening, TriangleForced) {
  const auto r = screen("path_forced.bq");
  EXPECT_EQ(status(r, CheckId::TRIANGLE_FORCED), Status::Fail);
  const auto& w = r.get(CheckId::TRIANGLE_FORCED).witness;
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0]["path"], Json::parse(R"(["a","b"])"));
  EXPECT_EQ(w[0]["missing_arrow"]["from"], "3");
  EXPECT_EQ(w[0]["missing_arrow"]["to"], "1");
  EXPECT_EQ(status(screen("triangle_rad2.bq"), CheckId::TRIANGLE_FORCED), Status::Pass);
}

TEST(Screening, Squares) {
  EXPECT_EQ(status(screen("square_cubes.bq"), CheckId::SQUARE_LEMMA), Status::Pass);
  EXPECT_EQ(status(screen("square_cubes.bq"), CheckId::SQUARE_FORCED), Status::Pass);
  const auto r = screen("square_one_cube.bq");
  EXPECT_EQ(status(r, CheckId::SQUARE_LEMMA), Status::Fail);
  EXPECT_EQ(r.get(CheckId::SQUARE_LEMMA).witness[0]["not_in_minimal_relation"], Json::parse(R"(["b","c","d"])"));
}

TEST(Screening, NearTheDegreeBoundIsInconclusive) {
  const FP f;
  auto doc = parse_document(
      "vertices: 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 3 -> 4\narrow d: 4 -> 1\n"
      "relation: a*b*c\nrelation: b*c*d*a\nrelation: c*d*a*b\n");
  const auto wide = build_algebra(doc, f, 30);
  EXPECT_EQ(run_pipeline(wide.quiver(), &wide, {}).get(CheckId::SQUARE_LEMMA).status, Status::Fail);
  const auto tight = build_algebra(doc, f, 5);
  const auto r = run_pipeline(tight.quiver(), &tight, {});
  EXPECT_EQ(r.get(CheckId::SQUARE_LEMMA).status, Status::Inconclusive);
  EXPECT_FALSE(r.get(CheckId::SQUARE_LEMMA).witness[0]["inconclusive"].get<bool>() == false);
}

TEST(Screening, WildFactor) {
  EXPECT_EQ(status(screen("wild_factor.bq"), CheckId::WILD_FACTOR), Status::Fail);
  EXPECT_EQ(status(screen("triangle_double_arrow.bq"), CheckId::WILD_FACTOR), Status::Pass);
}

TEST(Screening, SyntheticTypeR) {
  ScreeningOptions plain;
  auto doc = testing_support::load("synthetic_type_r.bq");
  const FP f;
  const auto A = build_algebra(doc, f);
  const auto without = run_pipeline(doc.quiver(), &A, plain);
  EXPECT_EQ(without.get(CheckId::DIMVEC_EQ).status, Status::Inapplicable);
  EXPECT_EQ(without.get(CheckId::VERTEX_TYPE_R).status, Status::Fail);

  const auto r = screen("synthetic_type_r.bq");
  EXPECT_EQ(status(r, CheckId::VERTEX_TYPE_R), Status::Fail);
  EXPECT_EQ(status(r, CheckId::DIMVEC_EQ), Status::Fail);
  const auto& w = r.get(CheckId::VERTEX_TYPE_R).witness;
  EXPECT_EQ(w[0]["vertex"], "i");
  EXPECT_EQ(w[0]["proper"], true);
  EXPECT_EQ(r.get(CheckId::DIMVEC_EQ).witness[0]["vertex"], "i");
}

TEST(Screening, TriangleClassificationInvariantOnRandomPresentations) {
  // Random relations on triangle-bearing quivers; classify_triangles throws if
  // a mixed triangle lacks an (outside, inside) consecutive pair.
  const FP f(101);
  std::mt19937_64 rng(77);
  const std::vector<std::vector<std::vector<std::size_t>>> shapes = {
      {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}, {{0, 2, 0}, {0, 0, 1}, {1, 0, 0}}, {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}},
      {{1, 1, 0}, {0, 0, 1}, {1, 0, 1}}};
  int classified = 0;
  for (int it = 0; it < 150; ++it) {
    Quiver q = quiver_from_counts(shapes[rng() % shapes.size()]);
    std::vector<AlgebraElement<FP>> rels;
    // Paths of length 4 vanish; each composite of length 2 is killed with probability 1/2.
    std::vector<PathWord> frontier;
    for (ArrowId a = 0; a < q.num_arrows(); ++a) frontier.push_back(PathWord::of_arrow(q, a));
    for (std::size_t len = 2; len <= 4; ++len) {
      std::vector<PathWord> next;
      for (const auto& p : frontier)
        for (ArrowId a : q.out_arrows(p.target)) next.push_back(*compose(p, PathWord::of_arrow(q, a)));
      for (const auto& p : next)
        if (len == 4 || (len == 2 && rng() % 2)) rels.push_back(AlgebraElement<FP>::from_path(f, p));
      frontier = std::move(next);
    }
    const auto A = PresentedAlgebra<FP>::build(q, rels, f);
    const MinimalRelations<FP> mr(A);
    std::vector<TriangleClass<FP>> cls;
    ASSERT_NO_THROW(cls = classify_triangles(A, mr));
    for (const auto& c : cls) {
      const int in = c.precedes[0] + c.precedes[1] + c.precedes[2];
      EXPECT_EQ(c.cls == 'M', in == 1 || in == 2);
      ++classified;
    }
    const auto rn = check_triangles(A, mr)[1];
    const bool any_mixed = std::any_of(cls.begin(), cls.end(), [](const auto& c) { return c.cls == 'M'; });
    EXPECT_EQ(rn.status == Status::Fail, any_mixed);
  }
  EXPECT_GT(classified, 150);
}

TEST(Screening, JsonIsDeterministic) {
  for (const auto& name : testing_support::corpus_files()) {
    const auto a = screen(name).to_json().dump();
    const auto b = screen(name).to_json().dump();
    EXPECT_EQ(a, b) << name;
  }
}

TEST(Screening, ReportSchema) {
  const auto j = screen("wild_factor.bq").to_json();
  EXPECT_TRUE(j.contains("input_hash"));
  EXPECT_TRUE(j["presentation"].contains("caveat"));
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c.contains("id"));
    EXPECT_TRUE(c.contains("status"));
    EXPECT_TRUE(c.contains("witness"));
    EXPECT_TRUE(c.contains("anchor"));
  }
}

}  // namespace
