#include "bq/field.hpp"
#include "bq/linalg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bq;

namespace {

template <class F>
typename F::value_type random_element(const F& f, std::mt19937_64& rng) {
  if constexpr (std::is_same_v<F, RationalField>) {
    std::uniform_int_distribution<int> d(-9, 9), n(1, 5);
    return f.div(f.from_int(d(rng)), f.from_int(n(rng)));
  } else {
    return f.element(rng());
  }
}

template <class F>
Matrix<F> random_matrix(const F& f, std::size_t r, std::size_t c, std::mt19937_64& rng, double zero_rate = 0.3) {
  Matrix<F> m(r, c);
  std::bernoulli_distribution zero(zero_rate);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = zero(rng) ? f.zero() : random_element(f, rng);
  return m;
}

template <class F>
class FieldProperties : public ::testing::Test {};

using Fields = ::testing::Types<PrimeField, RationalField>;
TYPED_TEST_SUITE(FieldProperties, Fields);

TYPED_TEST(FieldProperties, AxiomsOnRandomElements) {
  TypeParam f;
  std::mt19937_64 rng(7);
  for (int it = 0; it < 500; ++it) {
    auto a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
    EXPECT_TRUE(f.equal(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c))));
    EXPECT_TRUE(f.equal(f.add(a, f.neg(a)), f.zero()));
    EXPECT_TRUE(f.equal(f.sub(f.add(a, b), b), a));
    if (!f.is_zero(a)) EXPECT_TRUE(f.equal(f.mul(a, f.inv(a)), f.one()));
  }
}

TYPED_TEST(FieldProperties, RankNullityAndKernel) {
  TypeParam f;
  std::mt19937_64 rng(11);
  for (int it = 0; it < 60; ++it) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    auto m = random_matrix(f, r, c, rng, 0.5);
    const auto k = kernel(f, m);
    EXPECT_EQ(rank(f, m) + k.cols(), c);
    EXPECT_TRUE(is_zero(f, multiply(f, m, k)));
    EXPECT_EQ(rank(f, k), k.cols());
  }
}

TYPED_TEST(FieldProperties, InverseAndDeterminant) {
  TypeParam f;
  std::mt19937_64 rng(13);
  for (int it = 0; it < 40; ++it) {
    const std::size_t n = 1 + rng() % 5;
    auto a = random_matrix(f, n, n, rng), b = random_matrix(f, n, n, rng);
    EXPECT_TRUE(f.equal(determinant(f, multiply(f, a, b)), f.mul(determinant(f, a), determinant(f, b))));
    auto inv = inverse(f, a);
    EXPECT_EQ(inv.has_value(), !f.is_zero(determinant(f, a)));
    if (inv) EXPECT_EQ(multiply(f, a, *inv), Matrix<TypeParam>::identity(f, n));
  }
}

TYPED_TEST(FieldProperties, SolveFindsSolutionsOfConsistentSystems) {
  TypeParam f;
  std::mt19937_64 rng(17);
  for (int it = 0; it < 40; ++it) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    auto a = random_matrix(f, r, c, rng, 0.5);
    std::vector<typename TypeParam::value_type> x(c);
    for (auto& e : x) e = random_element(f, rng);
    const auto b = apply(f, a, x);
    auto y = solve(f, a, b);
    ASSERT_TRUE(y.has_value());
    EXPECT_EQ(apply(f, a, *y), b);
  }
}

TYPED_TEST(FieldProperties, SubspaceAgreesWithDenseRank) {
  TypeParam f;
  std::mt19937_64 rng(19);
  for (int it = 0; it < 40; ++it) {
    const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 7;
    auto m = random_matrix(f, r, c, rng, 0.5);
    Subspace<TypeParam> s(f);
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<typename TypeParam::value_type> row(c);
      for (std::size_t j = 0; j < c; ++j) row[j] = m(i, j);
      s.insert(to_sparse(f, row));
    }
    EXPECT_EQ(s.dimension(), rank(f, m));
    // Every row is in the span, and kernel_of_rows annihilates all rows.
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<typename TypeParam::value_type> row(c);
      for (std::size_t j = 0; j < c; ++j) row[j] = m(i, j);
      EXPECT_TRUE(s.contains(to_sparse(f, row)));
      for (const auto& k : kernel_of_rows(s, c)) {
        auto kd = to_dense<TypeParam>(k, c);
        auto acc = f.zero();
        for (std::size_t j = 0; j < c; ++j) acc = f.add(acc, f.mul(row[j], kd[j]));
        EXPECT_TRUE(f.is_zero(acc));
      }
    }
    EXPECT_EQ(kernel_of_rows(s, c).size() + s.dimension(), c);
  }
}

TEST(PrimeField, RejectsComposite) {
  EXPECT_THROW(PrimeField(32004), std::invalid_argument);
  EXPECT_NO_THROW(PrimeField(2));
}

TEST(PrimeField, ElementEnumerationCoversField) {
  PrimeField f(7);
  std::set<std::uint32_t> seen;
  for (std::uint64_t k = 0; k < f.order(); ++k) seen.insert(f.element(k));
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(f.to_string(f.from_int(-1)), "-1");
}

}  // namespace
