#include <gtest/gtest.h>

#include "ssr/charts.hpp"
#include "ssr/registry.hpp"
#include "support.hpp"

using namespace ssr;
using ssr::test::fp;
using ssr::test::vec;

namespace {
const Rational kQ(0);
const Vec<Rational> kP0 = vec(kQ, {1, 0, 0, 1});
}  // namespace

TEST(Chart, AlphaAtP0EncodesTheDecomposition) {
  const auto s = binary_cubics(kQ);
  const Chart<Rational> c(s, Rational(1));
  const HatPoint<Rational> p{kP0, Rational(3)};
  const auto v = c.alpha(p);
  EXPECT_EQ(c.h(v), Rational(1));
  // idempotent coordinates of alpha are the Lagrangian pair
  Vec<Rational> first, second;
  for (const auto& x : v) {
    auto [u, w] = to_idempotent(x, Rational(1));
    first.push_back(u);
    second.push_back(w);
  }
  const auto d = lagrangian_decompose(s, kP0);
  EXPECT_TRUE((first == d.b && second == d.c) || (first == d.c && second == d.b));
  EXPECT_EQ(first, vec(kQ, {0, 0, 0, 1}));
  EXPECT_EQ(second, vec(kQ, {1, 0, 0, 0}));
  EXPECT_EQ(c.alpha(p.sigma()), conj(v));
}

TEST(Chart, BetaRoundTrip) {
  const auto s = binary_cubics(kQ);
  const Chart<Rational> c(s, Rational(1));
  const HatPoint<Rational> p{kP0, Rational(3)};
  EXPECT_EQ(c.beta(c.alpha(p)), p);
}

TEST(Chart, InvalidPoints) {
  const auto s = binary_cubics(kQ);
  const Chart<Rational> c(s, Rational(1));
  EXPECT_THROW(c.alpha({kP0, Rational(2)}), InvalidHatPoint);
  EXPECT_THROW(c.alpha({vec(kQ, {1, 0, 0, 0}), Rational(1)}), InvalidHatPoint);
  const QuadContext<Rational> ctx(Rational(1));
  EXPECT_THROW(c.beta(ctx.embed(kP0)), InvalidZGenPoint);
  EXPECT_THROW(c.beta(ctx.embed(vec(kQ, {1, 0, 0, 0}))), InvalidZGenPoint);
}

TEST(Chart, TorusActionExamples) {
  const auto s = binary_cubics(kQ);
  const Chart<Rational> c(s, Rational(1));
  const HatPoint<Rational> p{kP0, Rational(3)};
  EXPECT_EQ(c.act({Rational(1), Rational(0)}, p), p);
  const auto q = c.act({Rational(2), Rational(0)}, p);
  EXPECT_EQ(q.p, Rational(2) * kP0);
  EXPECT_EQ(q.z, Rational(12));
  EXPECT_THROW(c.act({Rational(1), Rational(1)}, p), NonInvertibleScalar);
  const TorusElement<Rational> u{Rational(5, 4), Rational(3, 4)};
  ASSERT_EQ(u.norm(Rational(1)), Rational(1));
  const auto pu = c.act(u, p);
  EXPECT_EQ(pu.z, p.z);
  EXPECT_EQ(c.mu_hat(pu), c.mu_hat(p));
  const auto solved = c.orbit_solve(p, pu);
  ASSERT_TRUE(solved.has_value());
  EXPECT_EQ(solved->a, u.a);
  EXPECT_EQ(solved->b, u.b);
  EXPECT_NE(c.mu_hat({Rational(2) * kP0, Rational(12)}), c.mu_hat(p));
  EXPECT_FALSE(c.orbit_solve(p, {Rational(2) * kP0, Rational(12)}).has_value());
}

TEST(Chart, NonSplitLambda) {
  const auto s = binary_cubics(kQ);
  const auto a = vec(kQ, {1, 0, -1, 0});  // Q = -36
  for (long lam : {-1L, -4L, -36L}) {
    const Chart<Rational> c(s, Rational(lam));
    auto z = is_square(Rational(-36) / Rational(lam));
    ASSERT_TRUE(z.has_value());
    const HatPoint<Rational> p{a, *z};
    const auto v = c.alpha(p);
    EXPECT_EQ(c.h(v), Rational(1, 3) * *z);
    EXPECT_EQ(c.beta(v), p);
    EXPECT_EQ(c.beta(conj(v)), p.sigma());
  }
}

TEST(Chart, RandomPointsOverF7BothClasses) {
  Rng rng(1);
  for (const auto& id : test::small_instances()) {
    if (id.kind == ConstructionId::Kind::Tautological) continue;
    const auto s = make_ssr(id, fp(0, 7));
    for (long lam : {1L, 3L}) {
      const Chart<ModP> c(s, fp(lam, 7));
      int done = 0;
      for (int i = 0; i < 300 && done < 20; ++i) {
        const auto a = random_vector(rng, s.dim(), fp(0, 7));
        const ModP q = big_q(s, a);
        if (q.is_zero()) continue;
        auto z = is_square(q / fp(lam, 7));
        if (!z) continue;
        ++done;
        const HatPoint<ModP> p{a, rng.coin(2) ? *z : -*z};
        const auto v = c.alpha(p);
        EXPECT_EQ(c.beta(v), p) << id.name();
        EXPECT_EQ(c.alpha(c.beta(v)), v) << id.name();
        // a random unit from the conic x^2 - lambda y^2 = 1
        const ModP t = random_scalar(rng, fp(0, 7)), l = fp(lam, 7);
        const ModP den = fp(1, 7) - l * t * t;
        if (den.is_zero()) continue;
        const TorusElement<ModP> u{(fp(1, 7) + l * t * t) / den, fp(2, 7) * t / den};
        const TorusElement<ModP> w{fp(2, 7), fp(1, 7)};
        if (w.norm(l).is_zero()) continue;
        EXPECT_TRUE(c.action_law(u, w, p)) << id.name();
        const auto pu = c.act(u, p);
        EXPECT_EQ(c.mu_hat(pu), c.mu_hat(p)) << id.name();
        const auto solved = c.orbit_solve(p, pu);
        ASSERT_TRUE(solved.has_value()) << id.name();
        EXPECT_EQ(c.act(*solved, p), pu) << id.name();
      }
      // Q = 9/4 omega(v, Jv)^2 is always a square when lambda_J = 1
      if (id.kind != ConstructionId::Kind::JCommutant || lam == 1) EXPECT_GT(done, 0) << id.name() << " lambda " << lam;
    }
  }
}
