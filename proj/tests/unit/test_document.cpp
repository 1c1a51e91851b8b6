#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

using namespace bq;

namespace {

const char* kTwoArrows = "vertices: 1 2 3\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 1 -> 2\n";

TEST(Document, ParsesQuaternion) {
  const auto doc = testing_support::load("quaternion.bq");
  EXPECT_EQ(doc.vertices.size(), 1u);
  EXPECT_EQ(doc.arrows.size(), 2u);
  EXPECT_EQ(doc.relations.size(), 4u);
  ASSERT_TRUE(doc.field);
  EXPECT_EQ(doc.field->prime, 32003u);
  EXPECT_EQ(build_algebra(doc, PrimeField{}).dimension(), 8u);
}

TEST(Document, QuiverOnly) {
  const auto doc = parse_document("vertices: 1 2\narrow a: 1 -> 2\n");
  EXPECT_FALSE(doc.has_relations());
  EXPECT_FALSE(doc.field.has_value());
}

TEST(Document, ExpressionSyntax) {
  const auto doc = parse_document(
      "vertices: 1\narrow x: 1 -> 1\narrow y: 1 -> 1\nfield: Q\n"
      "relation: (x + y)*x - x x - 1/2 y^2 x\n"
      "relation: 3*(x*y)^2 - (2/3)*y x\n");
  const RationalField f;
  const Quiver q = doc.quiver();
  EXPECT_EQ(element_to_string(f, q, doc.relations[0]), "-(1/2)*y*y*x + y*x");
  EXPECT_EQ(element_to_string(f, q, doc.relations[1]), "3*x*y*x*y - (2/3)*y*x");
}

TEST(Document, FractionsOverPrimeField) {
  const auto doc = parse_document("vertices: 1\narrow x: 1 -> 1\nfield: Fp 7\nrelation: x^2 - 1/2*x^3\n");
  const PrimeField f(7);
  const auto rels = convert_relations(doc, f);
  // 1/2 = 4 in GF(7).
  EXPECT_EQ(rels[0].coefficient(f, make_path(doc.quiver(), 0, {0, 0, 0})), f.neg(4));
  const auto bad = parse_document("vertices: 1\narrow x: 1 -> 1\nfield: Fp 7\nrelation: x^2 - 1/7*x^3\n");
  EXPECT_THROW(convert_relations(bad, f), std::invalid_argument);
}

ParseError parse_error(const std::string& text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ParseError(ParseError::Kind::Syntax, 0, 0, "");
}

TEST(Document, SemanticErrors) {
  auto e = parse_error(std::string(kTwoArrows) + "relation: b*a\n");
  EXPECT_EQ(e.kind(), ParseError::Kind::Semantic);
  EXPECT_EQ(e.line(), 5u);
  EXPECT_NE(std::string(e.what()).find("b*a"), std::string::npos);

  e = parse_error(std::string(kTwoArrows) + "relation: a*b - c\n");
  EXPECT_EQ(e.kind(), ParseError::Kind::Semantic);

  e = parse_error(std::string(kTwoArrows) + "relation: a*b - a*q\n");
  EXPECT_EQ(e.kind(), ParseError::Kind::Semantic);
  EXPECT_NE(std::string(e.what()).find("unknown arrow 'q'"), std::string::npos);

  e = parse_error("vertices: 1 2\narrow a: 1 -> 3\n");
  EXPECT_EQ(e.kind(), ParseError::Kind::Semantic);

  e = parse_error("vertices: 1\narrow x: 1 -> 1\nrelation: x^2 - 2\n");
  EXPECT_EQ(e.kind(), ParseError::Kind::Semantic);

  e = parse_error("vertices: 1\narrow x: 1 -> 1\narrow y: 1 -> 1\nrelation: x*y - y\n");
  EXPECT_EQ(e.kind(), ParseError::Kind::Semantic);  // length-one term
}

TEST(Document, SyntaxErrorsCarryPositions) {
  auto e = parse_error("vertices: 1\narrow x: 1 -> 1\nrelation: x*(x + x\n");
  EXPECT_EQ(e.kind(), ParseError::Kind::Syntax);
  EXPECT_EQ(e.line(), 3u);
  EXPECT_GT(e.column(), 10u);

  e = parse_error("vertices: 1\nbogus line\n");
  EXPECT_EQ(e.kind(), ParseError::Kind::Syntax);
  EXPECT_EQ(e.line(), 2u);

  e = parse_error("vertices: 1\narrow x: 1 -> 1\nrelation: x * * x\n");
  EXPECT_EQ(e.line(), 3u);

  e = parse_error("vertices: 1\nfield: GF 5\n");
  EXPECT_EQ(e.kind(), ParseError::Kind::Syntax);

  e = parse_error("vertices: 1\noption colour: red\n");
  EXPECT_EQ(e.kind(), ParseError::Kind::Syntax);
}

TEST(Document, DefaultPrimeFromEnvironment) {
  const auto doc = parse_document("vertices: 1\narrow x: 1 -> 1\nrelation: x^2\n");
  ::unsetenv("BQ_PRIME");
  EXPECT_EQ(doc.resolved_field().prime, 32003u);
  ::setenv("BQ_PRIME", "101", 1);
  EXPECT_EQ(doc.resolved_field().prime, 101u);
  ::setenv("BQ_PRIME", "100", 1);
  EXPECT_THROW(doc.resolved_field(), std::invalid_argument);
  ::unsetenv("BQ_PRIME");
}

TEST(Document, HashIgnoresFormatting) {
  const auto a = parse_document("vertices: 1\narrow x: 1 -> 1\nrelation: x^2\n");
  const auto b = parse_document("# comment\nvertices:   1\n\narrow x : 1->1\nrelation: x * x   # trailing\n");
  EXPECT_EQ(document_hash(a), document_hash(b));
  const auto c = parse_document("vertices: 1\narrow x: 1 -> 1\nrelation: x^3\n");
  EXPECT_NE(document_hash(a), document_hash(c));
  EXPECT_EQ(document_hash(a).size(), 16u);
}

/// Random document: random quiver, random parallel combinations with rational coefficients.
InputDocument random_document(std::mt19937_64& rng) {
  InputDocument doc;
  const std::size_t n = 1 + rng() % 3;
  for (std::size_t v = 0; v < n; ++v) doc.vertices.push_back("v" + std::to_string(v));
  const std::size_t m = 1 + rng() % 4;
  for (std::size_t a = 0; a < m; ++a) doc.arrows.push_back({"a" + std::to_string(a), rng() % n, rng() % n});
  if (rng() % 2) doc.field = rng() % 2 ? FieldSpec{FieldSpec::Kind::Rational, 0} : FieldSpec{FieldSpec::Kind::Prime, 101};
  if (rng() % 2) doc.degree_bound = 10 + rng() % 20;
  if (rng() % 3 == 0) doc.max_period = 1 + rng() % 9;
  doc.assume_period4 = rng() % 4 == 0;
  const Quiver q = doc.quiver();
  const RationalField f;
  std::vector<PathWord> paths;
  for (ArrowId a = 0; a < m; ++a) paths.push_back(PathWord::of_arrow(q, a));
  for (int round = 0; round < 2; ++round) {
    std::vector<PathWord> longer;
    for (const auto& p : paths)
      for (ArrowId a : q.out_arrows(p.target)) longer.push_back(*compose(p, PathWord::of_arrow(q, a)));
    paths.insert(paths.end(), longer.begin(), longer.end());
  }
  std::vector<PathWord> pool;
  for (const auto& p : paths)
    if (p.length() >= 2) pool.push_back(p);
  const int nrel = pool.empty() ? 0 : rng() % 4;
  for (int k = 0; k < nrel; ++k) {
    const auto& lead = pool[rng() % pool.size()];
    AlgebraElement<RationalField> e(lead.source, lead.target);
    for (const auto& p : pool)
      if (p.source == lead.source && p.target == lead.target && (p == lead || rng() % 3 == 0)) {
        const int num = static_cast<int>(rng() % 11) - 5, den = 1 + rng() % 4;
        e.add_term(f, p, f.div(f.from_int(num == 0 ? 1 : num), f.from_int(den)));
      }
    if (!e.is_zero()) doc.relations.push_back(e);
  }
  return doc;
}

TEST(Document, RenderParseRoundTrip) {
  std::mt19937_64 rng(123);
  for (int it = 0; it < 500; ++it) {
    const auto doc = random_document(rng);
    const auto text = render_document(doc);
    const auto back = parse_document(text);
    EXPECT_EQ(back, doc) << text;
    EXPECT_EQ(render_document(back), text);
  }
}

TEST(Document, CorpusRoundTrip) {
  for (const auto& name : testing_support::corpus_files()) {
    const auto doc = testing_support::load(name);
    EXPECT_EQ(parse_document(render_document(doc)), doc) << name;
  }
}

TEST(Document, QuiverDocument) {
  Quiver q(2, {Arrow{"a1", 0, 1}, Arrow{"a2", 1, 0}});
  const auto doc = document_from_quiver(q);
  EXPECT_EQ(parse_document(render_document(doc)).quiver(), q);
}

}  // namespace
