#include "bq/quiver.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

using namespace bq;

namespace {

Quiver counts_quiver(std::vector<std::vector<std::size_t>> c) { return quiver_from_counts(c); }

/// Same quiver with vertices permuted and arrows shuffled.
Quiver relabel(const Quiver& q, std::mt19937_64& rng) {
  std::vector<VertexId> perm(q.num_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Arrow> arrows;
  for (const auto& a : q.arrows()) arrows.push_back({a.name, perm[a.source], perm[a.target]});
  std::shuffle(arrows.begin(), arrows.end(), rng);
  return Quiver(q.num_vertices(), arrows);
}

/// Random quiver with in/out degrees in [0, 2].
Quiver random_quiver(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::vector<std::size_t>> c(n, std::vector<std::size_t>(n, 0));
  std::vector<std::size_t> in(n, 0), out(n, 0);
  const std::size_t tries = 3 * n;
  for (std::size_t k = 0; k < tries; ++k) {
    const std::size_t u = rng() % n, v = rng() % n;
    if (out[u] < 2 && in[v] < 2) {
      ++c[u][v];
      ++out[u];
      ++in[v];
    }
  }
  return quiver_from_counts(c);
}

TEST(Quiver, RejectsBadArrows) {
  EXPECT_THROW(Quiver(2, {Arrow{"a", 0, 5}}), std::invalid_argument);
  EXPECT_THROW(Quiver(2, {Arrow{"a", 0, 1}, Arrow{"a", 1, 0}}), std::invalid_argument);
}

TEST(Quiver, ValidateReportsDegreesAndConnectivity) {
  Quiver q(3, {Arrow{"a", 0, 1}, Arrow{"b", 0, 1}, Arrow{"c", 0, 0}});
  const auto v = validate(q, true);
  ASSERT_FALSE(v.empty());
  EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](const auto& x) { return x.kind == Violation::Kind::Disconnected; }));
  EXPECT_TRUE(std::any_of(v.begin(), v.end(), [](const auto& x) { return x.kind == Violation::Kind::OutDegree; }));
  EXPECT_TRUE(validate(Quiver(1, {Arrow{"x", 0, 0}, Arrow{"y", 0, 0}}), true).empty());
}

TEST(Quiver, Regularity) {
  Quiver q(2, {Arrow{"x", 0, 0}, Arrow{"a", 0, 1}, Arrow{"b", 1, 0}});
  EXPECT_EQ(vertex_profile(q, 0).regularity, Regularity::TwoRegular);
  EXPECT_EQ(vertex_profile(q, 1).regularity, Regularity::OneRegular);
  Quiver r(3, {Arrow{"a", 0, 1}, Arrow{"b", 0, 2}, Arrow{"c", 1, 0}, Arrow{"d", 2, 0}});
  EXPECT_EQ(vertex_profile(r, 0).regularity, Regularity::TwoRegular);
  Quiver s(3, {Arrow{"a", 0, 1}, Arrow{"b", 0, 2}, Arrow{"c", 1, 0}});
  EXPECT_EQ(vertex_profile(s, 0).regularity, Regularity::OneTwo);
}

TEST(Quiver, IsolatedArrowsFlagOnlyArrowPairs) {
  // 2-cycle: every arrow is the only one leaving its source and entering its target.
  Quiver q(2, {Arrow{"a", 0, 1}, Arrow{"b", 1, 0}});
  EXPECT_EQ(find_isolated_arrows(q).size(), 2u);
  Quiver loops(1, {Arrow{"x", 0, 0}, Arrow{"y", 0, 0}});
  EXPECT_TRUE(find_isolated_arrows(loops).empty());
}

TEST(Quiver, ReturnPatternAndDual) {
  // j <-> i <- t
  Quiver q(3, {Arrow{"a", 0, 1}, Arrow{"b", 1, 0}, Arrow{"c", 2, 0}, Arrow{"d", 1, 2}});
  auto has = [](const std::vector<PatternMatch>& ms, VertexId v, bool dual) {
    return std::any_of(ms.begin(), ms.end(), [&](const auto& m) { return m.vertex == v && m.dual == dual; });
  };
  EXPECT_TRUE(has(find_return_patterns(q), 0, false));
  // j <-> i -> t
  Quiver d(3, {Arrow{"a", 0, 1}, Arrow{"b", 1, 0}, Arrow{"c", 0, 2}, Arrow{"d", 2, 1}});
  EXPECT_TRUE(has(find_return_patterns(d), 0, true));
  // A 2-regular vertex never matches.
  EXPECT_TRUE(find_return_patterns(Quiver(1, {Arrow{"x", 0, 0}, Arrow{"y", 0, 0}})).empty());
}

TEST(Quiver, TrianglesAndSquares) {
  Quiver t(3, {Arrow{"a", 0, 1}, Arrow{"b", 1, 2}, Arrow{"c", 2, 0}});
  ASSERT_EQ(enumerate_triangles(t).size(), 1u);
  EXPECT_EQ(enumerate_triangles(t)[0].arrows, (std::array<ArrowId, 3>{0, 1, 2}));
  EXPECT_TRUE(enumerate_squares(t).empty());
  Quiver d(3, {Arrow{"a", 0, 1}, Arrow{"a2", 0, 1}, Arrow{"b", 1, 2}, Arrow{"c", 2, 0}});
  EXPECT_EQ(enumerate_triangles(d).size(), 2u);
  Quiver s(4, {Arrow{"a", 0, 1}, Arrow{"b", 1, 2}, Arrow{"c", 2, 3}, Arrow{"d", 3, 0}});
  EXPECT_EQ(enumerate_squares(s).size(), 1u);
  // Loops never form triangles.
  EXPECT_TRUE(enumerate_triangles(Quiver(1, {Arrow{"x", 0, 0}})).empty());
}

TEST(Quiver, OneVertexTriangleRule) {
  // Triangle with all three vertices 1-regular.
  Quiver t(3, {Arrow{"a", 0, 1}, Arrow{"b", 1, 2}, Arrow{"c", 2, 0}});
  EXPECT_EQ(find_one_vertex_triangle_violations(t).size(), 3u);
}

TEST(CanonicalForm, InvariantUnderRelabelling) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 1 + rng() % 5;
    Quiver q = random_quiver(n, rng);
    const auto key = canonical_form(q);
    for (int k = 0; k < 3; ++k) EXPECT_EQ(canonical_form(relabel(q, rng)), key);
  }
}

TEST(CanonicalForm, SeparatesNonIsomorphic) {
  // Brute-force isomorphism over all vertex permutations agrees with key equality.
  std::mt19937_64 rng(5);
  auto iso = [](const Quiver& a, const Quiver& b) {
    if (a.num_vertices() != b.num_vertices() || a.num_arrows() != b.num_arrows()) return false;
    const auto ca = adjacency_counts(a), cb = adjacency_counts(b);
    std::vector<VertexId> p(a.num_vertices());
    std::iota(p.begin(), p.end(), 0);
    do {
      bool same = true;
      for (std::size_t u = 0; u < p.size() && same; ++u)
        for (std::size_t v = 0; v < p.size() && same; ++v) same = ca[u][v] == cb[p[u]][p[v]];
      if (same) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
  };
  for (int it = 0; it < 400; ++it) {
    const std::size_t n = 1 + rng() % 4;
    Quiver a = random_quiver(n, rng), b = random_quiver(n, rng);
    EXPECT_EQ(canonical_form(a) == canonical_form(b), iso(a, b));
  }
}

std::set<std::string> keys(const std::vector<Quiver>& qs) {
  std::set<std::string> s;
  for (const auto& q : qs) s.insert(canonical_form(q));
  return s;
}

TEST(Enumeration, OneVertex) {
  EnumerationOptions o;
  o.num_vertices = 1;
  auto all = enumerate_biserial_quivers(o);
  EXPECT_EQ(all.generated, 2u);
  EXPECT_EQ(keys(all.quivers), (std::set<std::string>{canonical_form(counts_quiver({{1}})),
                                                      canonical_form(counts_quiver({{2}}))}));
  o.filters = {QuiverFilter::IsolatedArrow};
  auto kept = enumerate_biserial_quivers(o);
  EXPECT_EQ(keys(kept.quivers), (std::set<std::string>{canonical_form(counts_quiver({{2}}))}));
}

TEST(Enumeration, TwoVerticesMatchesHandList) {
  // (loops at 1, arrows 1->2, arrows 2->1, loops at 2)
  const std::vector<std::array<std::size_t, 4>> hand = {
      {1, 0, 1, 1}, {0, 1, 1, 0}, {1, 1, 1, 0}, {1, 1, 1, 1}, {0, 2, 1, 0}, {0, 2, 2, 0}};
  std::set<std::string> expected;
  for (const auto& h : hand) expected.insert(canonical_form(counts_quiver({{h[0], h[1]}, {h[2], h[3]}})));
  EnumerationOptions o;
  o.num_vertices = 2;
  auto all = enumerate_biserial_quivers(o);
  EXPECT_EQ(all.generated, 6u);
  EXPECT_EQ(keys(all.quivers), expected);

  o.filters = {QuiverFilter::IsolatedArrow, QuiverFilter::ReturnPattern};
  auto kept = enumerate_biserial_quivers(o);
  std::set<std::string> survivors;
  for (const auto& h : std::vector<std::array<std::size_t, 4>>{{1, 1, 1, 0}, {1, 1, 1, 1}, {0, 2, 2, 0}})
    survivors.insert(canonical_form(counts_quiver({{h[0], h[1]}, {h[2], h[3]}})));
  EXPECT_EQ(keys(kept.quivers), survivors);
  ASSERT_EQ(kept.surviving_after.size(), 2u);
  EXPECT_GE(kept.surviving_after[0].second, kept.surviving_after[1].second);
}

TEST(Enumeration, BruteForceAgreesForThreeVertices) {
  // Independent count: all 3x3 count matrices, deduplicated by brute-force isomorphism classes.
  const std::size_t n = 3;
  std::vector<std::vector<std::vector<std::size_t>>> reps;
  auto canon_brute = [&](const std::vector<std::vector<std::size_t>>& c) {
    std::vector<VertexId> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::size_t> best;
    do {
      std::vector<std::size_t> flat;
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) flat.push_back(c[p[u]][p[v]]);
      if (best.empty() || flat < best) best = flat;
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
  };
  std::set<std::vector<std::size_t>> classes;
  std::vector<std::size_t> e(n * n, 0);
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == n * n) {
      std::vector<std::vector<std::size_t>> c(n, std::vector<std::size_t>(n));
      std::size_t total = 0;
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) total += c[u][v] = e[u * n + v];
      if (total > 2 * n) return;
      for (std::size_t u = 0; u < n; ++u) {
        std::size_t out = 0, in = 0;
        for (std::size_t v = 0; v < n; ++v) out += c[u][v], in += c[v][u];
        if (out < 1 || out > 2 || in < 1 || in > 2) return;
      }
      if (!is_connected(quiver_from_counts(c))) return;
      classes.insert(canon_brute(c));
      return;
    }
    for (std::size_t x = 0; x <= 2; ++x) {
      e[k] = x;
      go(k + 1);
    }
  };
  go(0);
  EnumerationOptions o;
  o.num_vertices = n;
  EXPECT_EQ(enumerate_biserial_quivers(o).generated, classes.size());
}

TEST(Enumeration, CandidateCap) {
  EnumerationOptions o;
  o.num_vertices = 4;
  o.candidate_cap = 10;
  EXPECT_THROW(enumerate_biserial_quivers(o), ResourceLimitExceeded);
}

}  // namespace
