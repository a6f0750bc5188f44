#include <gtest/gtest.h>

#include <set>

#include "ssr/decomposition.hpp"
#include "ssr/identities.hpp"
#include "ssr/registry.hpp"
#include "support.hpp"

using namespace ssr;
using ssr::test::fp;
using ssr::test::vec;

namespace {
const Rational kQ(0);

template <class K>
bool same_pair(const Vec<K>& b, const Vec<K>& c, const Vec<K>& x, const Vec<K>& y) {
  return (b == x && c == y) || (b == y && c == x);
}
}  // namespace

TEST(Lagrangian, CubicExample) {
  const auto s = binary_cubics(kQ);
  const auto d = lagrangian_decompose(s, vec(kQ, {1, 0, 0, 1}));
  EXPECT_TRUE(same_pair(d.b, d.c, vec(kQ, {1, 0, 0, 0}), vec(kQ, {0, 0, 0, 1})));
  EXPECT_TRUE(d.q == Rational(3) || d.q == Rational(-3));
  EXPECT_EQ(d.lambda_class, Rational(1));
  EXPECT_THROW(lagrangian_decompose(s, vec(kQ, {1, 0, 0, 0})), ZeroQuartic);
  EXPECT_THROW(lagrangian_decompose(s, vec(kQ, {1, 0, -1, 0})), NotASquare);
}

TEST(Lagrangian, ThreeFormExample) {
  const auto s = three_forms6(kQ);
  Vec<Rational> e123 = zeros(20, kQ), e456 = zeros(20, kQ);
  e123[ext::triple_index(7)] = Rational(1);
  e456[ext::triple_index(56)] = Rational(1);
  const auto d = lagrangian_decompose(s, e123 + e456);
  EXPECT_TRUE(same_pair(d.b, d.c, e123, e456));
}

TEST(Lagrangian, RoundTripFromMuNullPairs) {
  Rng rng(1);
  for (const auto& id : test::small_instances()) {
    if (id.kind == ConstructionId::Kind::Tautological) continue;
    const auto s = make_ssr(id, kQ);
    ZeroSetSampler<Rational> sampler(id, s);
    int done = 0;
    for (int i = 0; i < 400 && done < 30; ++i) {
      auto b = sampler.sample(rng), c = sampler.sample(rng);
      if (s.omega(*b, *c).is_zero()) continue;
      ++done;
      const auto d = lagrangian_decompose(s, *b + *c);
      EXPECT_TRUE(same_pair(d.b, d.c, *b, *c)) << id.name();
      EXPECT_EQ(d.q * d.q, big_q(s, *b + *c)) << id.name();
    }
    EXPECT_GT(done, 0) << id.name();
  }
}

TEST(Lagrangian, ExhaustiveCubicsOverF5) {
  const std::uint64_t p = 5;
  const auto s = binary_cubics(fp(0, p));
  const auto vs = test::all_vectors(4, p);
  std::vector<Vec<ModP>> z;
  for (const auto& v : vs)
    if (!is_zero(v) && is_zero(mu(s, v))) z.push_back(v);
  for (const auto& a : vs) {
    // every unordered pair {B, C} of mu-null vectors with B + C = A and omega(B, C) != 0
    std::vector<std::pair<Vec<ModP>, Vec<ModP>>> pairs;
    for (const auto& b : z) {
      const auto c = a - b;
      if (!is_zero(mu(s, c)) || is_zero(c) || s.omega(b, c).is_zero()) continue;
      if (std::lexicographical_compare(c.begin(), c.end(), b.begin(), b.end(),
                                       [](const ModP& x, const ModP& y) { return x.value() < y.value(); }))
        continue;
      pairs.emplace_back(b, c);
    }
    const ModP q = big_q(s, a);
    if (q.is_zero()) {
      EXPECT_THROW(lagrangian_decompose(s, a), ZeroQuartic);
      EXPECT_TRUE(pairs.empty());
    } else if (!is_square(q)) {
      EXPECT_THROW(lagrangian_decompose(s, a), NotASquare);
      EXPECT_TRUE(pairs.empty());
    } else {
      const auto d = lagrangian_decompose(s, a);
      ASSERT_EQ(pairs.size(), 1u);
      EXPECT_TRUE(same_pair(d.b, d.c, pairs[0].first, pairs[0].second));
    }
  }
}

TEST(Lagrangian, SquareClassDichotomyForCubicsOverF5) {
  const auto s = binary_cubics(fp(0, 5));
  std::set<std::uint64_t> image;
  for (const auto& v : test::all_vectors(4, 5)) image.insert(big_q(s, v).value());
  std::size_t squares_hit = 0;
  for (std::uint64_t x : {1u, 4u}) squares_hit += image.count(x);
  EXPECT_TRUE(squares_hit == 0 || squares_hit == 2);
}

TEST(QuadExt, NonsquareCubicOverRationals) {
  const auto s = binary_cubics(kQ);
  const auto a = vec(kQ, {1, 0, -1, 0});
  EXPECT_EQ(big_q(s, a), Rational(-36));
  const auto d = quad_ext_decompose(s, a, Rational(-1));
  EXPECT_EQ(real_part(d.b + d.c), a);
  EXPECT_TRUE(is_zero(imag_part(d.b + d.c)));
  EXPECT_EQ(d.c, conj(d.b));
  EXPECT_EQ(d.lambda_class, Rational(-1));
  // lambda is only read up to squares
  EXPECT_NO_THROW(quad_ext_decompose(s, a, Rational(-4)));
  EXPECT_THROW(quad_ext_decompose(s, vec(kQ, {1, 0, 0, 1}), Rational(-1)), WrongSquareClass);
  EXPECT_THROW(quad_ext_decompose(s, vec(kQ, {1, 0, 0, 0}), Rational(-1)), ZeroQuartic);
}

TEST(QuadExt, ExhaustiveCubicsOverF5WithLambdaTwo) {
  const auto s = binary_cubics(fp(0, 5));
  const QuadContext<ModP> ctx(fp(2, 5));
  const auto se = base_extend(s, ctx);
  std::size_t count = 0;
  for (const auto& a : test::all_vectors(4, 5)) {
    const ModP q = big_q(s, a);
    if (q.is_zero() || is_square(q)) continue;
    ++count;
    const auto d = quad_ext_decompose(s, a, fp(2, 5));
    EXPECT_EQ(d.b + conj(d.b), ctx.embed(a));
    EXPECT_TRUE(is_zero(mu(se, d.b)));
  }
  EXPECT_GT(count, 0u);
}

TEST(Fiber, TrivialPoints) {
  const auto s = binary_cubics(kQ);
  const auto a = vec(kQ, {1, 2, 0, 1});
  const auto f = mu_fiber(s, a);
  EXPECT_TRUE(f.contains(f.point(Rational(1), Rational(0))));
  EXPECT_EQ(f.point(Rational(-1), Rational(0)), Rational(-1) * a);
  EXPECT_EQ(mu(s, Rational(-1) * a), mu(s, a));
  EXPECT_FALSE(f.contains(Rational(2) * a));
}

TEST(Fiber, CubicExampleConicPoint) {
  // Q = 9 for x^3 + y^3 and (5/4, 1/4) lies on x^2 - 9y^2 = 1
  const auto s = binary_cubics(kQ);
  const auto a = vec(kQ, {1, 0, 0, 1});
  const auto f = mu_fiber(s, a);
  EXPECT_TRUE(f.on_conic(Rational(5, 4), Rational(1, 4)));
  const auto v = f.point(Rational(5, 4), Rational(1, 4));
  EXPECT_EQ(mu(s, v), mu(s, a));
  EXPECT_EQ(big_q(s, v), big_q(s, a));
}

TEST(Fiber, ExhaustiveOverF7MatchesMuLevelSet) {
  const auto s = binary_cubics(fp(0, 7));
  Rng rng(2);
  for (int i = 0; i < 5; ++i) {
    auto a = random_vector(rng, 4, fp(0, 7));
    if (big_q(s, a).is_zero()) continue;
    const auto f = mu_fiber(s, a);
    std::set<std::vector<std::uint64_t>> from_conic, level;
    for (const auto& v : f.sample()) {
      std::vector<std::uint64_t> key;
      for (const auto& x : v) key.push_back(x.value());
      from_conic.insert(key);
    }
    for (const auto& v : test::all_vectors(4, 7))
      if (mu(s, v) == mu(s, a)) {
        std::vector<std::uint64_t> key;
        for (const auto& x : v) key.push_back(x.value());
        level.insert(key);
      }
    EXPECT_EQ(from_conic, level);
  }
}

TEST(EigenDecomposition, CubicScalarsAndDims) {
  const auto s = binary_cubics(kQ);
  const auto e = mu_eigendecomposition(s, vec(kQ, {1, 0, 0, 1}));
  std::multiset<std::string> scalars;
  for (const auto& b : e.blocks) {
    EXPECT_EQ(b.space.dim(), 1u);
    scalars.insert(b.scalar.to_string());
  }
  EXPECT_EQ(scalars, (std::multiset<std::string>{"-3", "-1", "1", "3"}));
}

TEST(EigenDecomposition, ThreeFormDims) {
  const auto s = three_forms6(kQ);
  Vec<Rational> a = zeros(20, kQ);
  a[ext::triple_index(7)] = Rational(1);
  a[ext::triple_index(56)] = Rational(1);
  const auto e = mu_eigendecomposition(s, a);
  std::vector<std::size_t> dims;
  for (const auto& b : e.blocks) dims.push_back(b.space.dim());
  EXPECT_EQ(dims, (std::vector<std::size_t>{1, 9, 9, 1}));
  const auto mp = minimal_polynomial_mu(s, a);
  EXPECT_EQ(mp.first, vec(kQ, {9, 0, -10, 0, 1}));
}

TEST(EigenDecomposition, RandomSquareVectorsOverF7) {
  Rng rng(3);
  for (const auto& id : test::small_instances()) {
    const auto s = make_ssr(id, fp(0, 7));
    int done = 0;
    for (int i = 0; i < 200 && done < 10; ++i) {
      const auto a = random_vector(rng, s.dim(), fp(0, 7));
      const ModP q = big_q(s, a);
      if (q.is_zero() || !is_square(q)) continue;
      ++done;
      EXPECT_NO_THROW(mu_eigendecomposition(s, a)) << id.name();
    }
  }
}
