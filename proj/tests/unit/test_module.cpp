#include "oracle/path_space_oracle.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bq;

namespace {

using FP = PrimeField;

template <class F>
Matrix<F> random_invertible(const F& f, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix<F> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = f.element(rng());
    if (inverse(f, m)) return m;
  }
}

/// N_a = g_t M_a g_s^{-1}: a module isomorphic to M.
template <class F>
RightModule<F> conjugate(const RightModule<F>& M, std::mt19937_64& rng) {
  const F& f = M.field();
  const Quiver& q = M.quiver();
  std::vector<Matrix<F>> g, gi;
  for (VertexId v = 0; v < q.num_vertices(); ++v) {
    g.push_back(random_invertible(f, M.dim(v), rng));
    gi.push_back(*inverse(f, g.back()));
  }
  RightModule<F> N(M.quiver_ptr(), f, M.dimension_vector());
  for (ArrowId a = 0; a < q.num_arrows(); ++a)
    N.set_action(a, multiply(f, multiply(f, g[q.arrow(a).target], M.action(a)), gi[q.arrow(a).source]));
  return N;
}

TEST(Modules, ProjectivesAndSimples) {
  for (const char* name : {"quaternion.bq", "two_vertex_period4.bq", "nakayama_2cycle.bq", "synthetic_type_r.bq"}) {
    const auto A = testing_support::build(name, FP{});
    const auto C = A.cartan_matrix();
    for (VertexId v = 0; v < A.quiver().num_vertices(); ++v) {
      const auto P = projective(A, v);
      EXPECT_EQ(P.dimension_vector(), C[v]) << name;
      EXPECT_TRUE(satisfies_relations(A, P)) << name;
      const auto S = simple(A, v);
      EXPECT_TRUE(satisfies_relations(A, S));
      auto top = top_multiplicities(P);
      std::vector<std::size_t> expect(C.size(), 0);
      expect[v] = 1;
      EXPECT_EQ(top, expect) << name;
    }
  }
}

TEST(Modules, SyzygyDimensionBookkeeping) {
  // dim Omega(M) = dim P(M) - dim M at every step.
  for (const char* name : {"quaternion.bq", "two_vertex_period4.bq", "nakayama_2cycle.bq", "triangle_rad2.bq"}) {
    const auto A = testing_support::build(name, FP{});
    for (VertexId v = 0; v < A.quiver().num_vertices(); ++v) {
      auto M = simple(A, v);
      for (int k = 0; k < 5 && !M.is_zero(); ++k) {
        const auto cover = projective_cover(A, M);
        const auto om = syzygy(A, M);
        EXPECT_EQ(om.total_dimension(), cover.projective.total_dimension() - M.total_dimension()) << name;
        EXPECT_TRUE(satisfies_relations(A, om));
        M = om;
      }
    }
  }
}

TEST(Modules, Periods) {
  const auto Q = testing_support::build("quaternion.bq", FP{});
  const auto pq = omega_period(Q, 0, 8);
  ASSERT_TRUE(pq.period);
  EXPECT_EQ(*pq.period, 4u);
  EXPECT_EQ(pq.dimensions, (std::vector<std::size_t>{7, 9, 7, 1}));

  // Radical square zero 2-cycle: Omega(S_1) = S_2, Omega(S_2) = S_1.
  const auto N = testing_support::build("nakayama_2cycle.bq", FP{});
  for (VertexId v = 0; v < 2; ++v) {
    const auto r = omega_period(N, v, 8);
    ASSERT_TRUE(r.period);
    EXPECT_EQ(*r.period, 2u);
    EXPECT_EQ(r.dimensions, (std::vector<std::size_t>{1, 1}));
  }

  // K[x]/(x^2): Omega(S) = S.
  const auto D = testing_support::build("dual_numbers.bq", FP{});
  EXPECT_EQ(omega_period(D, 0, 8).period, std::optional<std::size_t>{1});

  // Hereditary A2: Omega(S_1) = P_2 is projective, so the next syzygy is zero.
  const auto H = testing_support::build("hereditary_a2.bq", FP{});
  const auto h = omega_period(H, 0, 8);
  EXPECT_FALSE(h.period);
  EXPECT_FALSE(h.reason.empty());

  const auto T = testing_support::build("two_vertex_period4.bq", FP{});
  EXPECT_EQ(omega_period(T, 0, 8).dimensions, (std::vector<std::size_t>{3, 4, 3, 1}));
  EXPECT_EQ(omega_period(T, 1, 8).dimensions, (std::vector<std::size_t>{2, 2, 2, 1}));
}

TEST(Modules, HomFromProjectiveIsVertexSpace) {
  std::mt19937_64 rng(8);
  const auto A = testing_support::build("two_vertex_period4.bq", FP{});
  std::vector<RightModule<FP>> mods;
  for (VertexId v = 0; v < 2; ++v) {
    mods.push_back(simple(A, v));
    mods.push_back(projective(A, v));
    mods.push_back(syzygy(A, simple(A, v)));
    mods.push_back(syzygy(A, mods.back()));
  }
  for (const auto& M : mods)
    for (VertexId v = 0; v < 2; ++v) EXPECT_EQ(hom_space(projective(A, v), M).size(), M.dim(v));
}

TEST(Modules, IsomorphismUnderBasisChange) {
  std::mt19937_64 rng(99);
  for (const char* name : {"quaternion.bq", "two_vertex_period4.bq"}) {
    const auto A = testing_support::build(name, FP{});
    for (VertexId v = 0; v < A.quiver().num_vertices(); ++v) {
      auto M = simple(A, v);
      for (int k = 0; k < 4; ++k) {
        M = syzygy(A, M);
        EXPECT_TRUE(modules_isomorphic(M, conjugate(M, rng))) << name;
      }
    }
  }
}

TEST(Modules, NonIsomorphicWithEqualDimensionVectors) {
  const FP f;
  const auto A = testing_support::build("quaternion.bq", f);
  auto q = A.quiver_ptr();
  Matrix<FP> jordan(2, 2);
  jordan(1, 0) = 1;
  RightModule<FP> X(q, f, {2}), Y(q, f, {2}), Z(q, f, {2});
  X.set_action(0, jordan);
  Y.set_action(1, jordan);
  ASSERT_TRUE(satisfies_relations(A, X));
  ASSERT_TRUE(satisfies_relations(A, Y));
  EXPECT_FALSE(modules_isomorphic(X, Y));
  EXPECT_FALSE(modules_isomorphic(X, Z));
  EXPECT_TRUE(modules_isomorphic(Z, direct_sum(q, f, {simple(A, 0), simple(A, 0)})));
  const auto P = projective(A, 0), S = simple(A, 0);
  EXPECT_TRUE(modules_isomorphic(direct_sum(q, f, {P, S}), direct_sum(q, f, {S, P})));
}

TEST(Modules, SmallFieldIsomorphismUsesExactGrid) {
  // Over GF(2) random combinations are weak; the exhaustive grid must still decide.
  const FP f(2);
  const auto A = testing_support::build("quaternion.bq", f);
  std::mt19937_64 rng(1);
  auto M = syzygy(A, simple(A, 0));
  for (int k = 0; k < 3; ++k) EXPECT_TRUE(modules_isomorphic(M, conjugate(M, rng)));
}

// ---------------------------------------------------------------------------
// Symmetrizing forms
// ---------------------------------------------------------------------------

TEST(Symmetric, QuaternionFormIsCertified) {
  const auto A = testing_support::build("quaternion.bq", FP{});
  const auto form = symmetrizing_form(A);
  ASSERT_TRUE(form);
  EXPECT_TRUE(is_symmetrizing(A, form->values));
}

TEST(Symmetric, AgreesWithExhaustiveSearchOverSmallFields) {
  for (std::uint32_t p : {3u, 5u}) {
    const FP f(p);
    for (const auto& name : testing_support::corpus_files()) {
      const auto doc = testing_support::load(name);
      if (!doc.has_relations() || doc.resolved_field().kind == FieldSpec::Kind::Rational) continue;
      const auto rels = convert_relations(doc, f);
      const auto A = PresentedAlgebra<FP>::build(doc.quiver(), rels, f);
      if (A.dimension() > (p == 3 ? 10u : 7u)) continue;
      oracle::PathSpaceOracle<FP> o(doc.quiver(), rels, f);
      const auto brute = o.symmetric_by_search(20'000'000);
      ASSERT_TRUE(brute.has_value()) << name;
      EXPECT_EQ(symmetrizing_form(A).has_value(), *brute) << name << " over GF(" << p << ")";
    }
  }
}

TEST(Symmetric, ExpectedVerdicts) {
  EXPECT_TRUE(symmetrizing_form(testing_support::build("two_vertex_period4.bq", FP{})));
  EXPECT_TRUE(symmetrizing_form(testing_support::build("dual_numbers.bq", FP{})));
  // Self-injective but the Nakayama permutation swaps the vertices.
  EXPECT_FALSE(symmetrizing_form(testing_support::build("nakayama_2cycle.bq", FP{})));
  EXPECT_FALSE(symmetrizing_form(testing_support::build("hereditary_a2.bq", FP{})));
}

// ---------------------------------------------------------------------------
// Exact sequences
// ---------------------------------------------------------------------------

TEST(Sequence, Quaternion) {
  const FP f;
  const auto A = testing_support::build("quaternion.bq", f);
  const auto& q = A.quiver();
  const auto d = exact_sequence_data(A, 0);
  ASSERT_EQ(d.M.size(), 2u);
  EXPECT_EQ(element_to_string(f, q, d.M[0][0]), "x");
  EXPECT_EQ(element_to_string(f, q, d.M[0][1]), "-y*x");
  EXPECT_EQ(element_to_string(f, q, d.M[1][0]), "-x*y");
  EXPECT_EQ(element_to_string(f, q, d.M[1][1]), "y");
  EXPECT_TRUE(d.substitutions.empty());
  EXPECT_TRUE(d.checks.all());
  EXPECT_EQ(d.p, std::vector<std::size_t>{8});
  EXPECT_EQ(d.p_plus, std::vector<std::size_t>{16});
  EXPECT_EQ(d.p_minus, std::vector<std::size_t>{16});
}

TEST(Sequence, AllChecksOnPeriodFourCorpus) {
  for (const char* name : {"quaternion.bq", "two_vertex_period4.bq", "quaternion_rational.bq"}) {
    const auto doc = testing_support::load(name);
    auto run = [&](const auto& f) {
      const auto A = build_algebra(doc, f);
      for (VertexId v = 0; v < A.quiver().num_vertices(); ++v) {
        const auto d = exact_sequence_data(A, v);
        EXPECT_TRUE(d.checks.all()) << name << " vertex " << v;
        // M composes with the arrow row and column to zero.
        for (std::size_t c = 0; c < d.in_arrows.size(); ++c) {
          AlgebraElement<std::decay_t<decltype(f)>> s(v, A.quiver().arrow(d.in_arrows[c]).source);
          for (std::size_t r = 0; r < d.out_arrows.size(); ++r)
            s.add_scaled(f, A.multiply(AlgebraElement<std::decay_t<decltype(f)>>::from_path(
                                           f, PathWord::of_arrow(A.quiver(), d.out_arrows[r])),
                                       d.M[r][c]),
                         f.one());
          EXPECT_TRUE(A.normal_form(s).is_zero()) << name;
        }
      }
    };
    if (doc.resolved_field().kind == FieldSpec::Kind::Rational)
      run(RationalField{});
    else
      run(FP{});
  }
}

TEST(Sequence, PeriodNotFour) {
  const auto A = testing_support::build("nakayama_2cycle.bq", FP{});
  try {
    exact_sequence_data(A, 0);
    FAIL();
  } catch (const SequenceError& e) {
    EXPECT_EQ(e.kind(), SequenceError::Kind::PeriodNot4);
  }
}

}  // namespace
