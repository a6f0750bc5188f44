#include <gtest/gtest.h>

#include "ssr/constructions.hpp"
#include "ssr/random.hpp"
#include "support.hpp"

using namespace ssr;
using ssr::test::fp;
using ssr::test::vec;

namespace {

template <class K>
Matrix<K> random_matrix(Rng& rng, std::size_t r, std::size_t c, const K& like, std::size_t rank_cap = 1000) {
  // product of random r x k and k x c factors, so low ranks show up
  const std::size_t k = std::min({r, c, rank_cap});
  Matrix<K> a = Matrix<K>::zero(r, k, like), b = Matrix<K>::zero(k, c, like);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < k; ++j) a(i, j) = random_scalar(rng, like);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < c; ++j) b(i, j) = random_scalar(rng, like);
  return a * b;
}

Matrix<Rational> diag(std::initializer_list<long> xs) {
  const std::size_t n = xs.size();
  Matrix<Rational> m = Matrix<Rational>::zero(n, n, Rational(0));
  std::size_t i = 0;
  for (long x : xs) {
    m(i, i) = Rational(x);
    ++i;
  }
  return m;
}

}  // namespace

TEST(Linalg, KernelAndRankExamples) {
  const Rational q(0);
  EXPECT_EQ(kernel(Matrix<Rational>::zero(2, 2, q)).dim(), 2u);
  EXPECT_EQ(rank(Matrix<Rational>::identity(5, q)), 5u);
  const Matrix<ModP> m(2, 2, {fp(1, 7), fp(1, 7), fp(2, 7), fp(2, 7)});
  const auto k = kernel(m);
  ASSERT_EQ(k.dim(), 1u);
  EXPECT_TRUE(k.contains(Vec<ModP>{fp(1, 7), fp(-1, 7)}));
}

TEST(Linalg, EigenspaceExamples) {
  const Rational q(0);
  EXPECT_EQ(eigenspace(Matrix<Rational>::identity(3, q), Rational(1)).dim(), 3u);
  EXPECT_EQ(eigenspace(diag({1, -1}), Rational(2)).dim(), 0u);
  const auto e = eigenspace(diag({3, -3, 1, -1}), Rational(-3));
  ASSERT_EQ(e.dim(), 1u);
  EXPECT_TRUE(e.contains(vec(q, {0, 1, 0, 0})));
}

TEST(Linalg, MinimalPolynomialExamples) {
  const Rational q(0);
  EXPECT_EQ(minimal_polynomial(Matrix<Rational>::zero(3, 3, q)), vec(q, {0, 1}));
  // (x^2-9)(x^2-1) = x^4 - 10x^2 + 9
  EXPECT_EQ(minimal_polynomial(diag({3, -3, 1, -1})), vec(q, {9, 0, -10, 0, 1}));
  Matrix<Rational> j = Matrix<Rational>::zero(4, 4, q);
  for (int i = 0; i < 3; ++i) j(i, i + 1) = Rational(1);
  EXPECT_EQ(minimal_polynomial(j), vec(q, {0, 0, 0, 0, 1}));
}

TEST(Linalg, SymplecticPerpExamples) {
  const Rational q(0);
  const Matrix<Rational> g = standard_symplectic(2, q);
  EXPECT_EQ(symplectic_perp(Subspace<Rational>(4, q), g).dim(), 4u);
  EXPECT_EQ(symplectic_perp(Subspace<Rational>::whole(4, q), g).dim(), 0u);
  const Matrix<Rational> g2 = standard_symplectic(1, q);
  const auto line = Subspace<Rational>::span(2, {vec(q, {1, 0})}, q);
  EXPECT_EQ(symplectic_perp(line, g2), line);
  EXPECT_TRUE(is_isotropic(line, g2));
  EXPECT_THROW(SymplecticForm<Rational>(diag({1, 1})), DegenerateForm);
}

TEST(Linalg, SubspaceExamples) {
  const Rational q(0);
  const auto e1 = Subspace<Rational>::span(3, {vec(q, {1, 0, 0})}, q);
  const auto e2 = Subspace<Rational>::span(3, {vec(q, {0, 1, 0})}, q);
  const auto e3 = Subspace<Rational>::span(3, {vec(q, {0, 0, 1})}, q);
  EXPECT_EQ(intersection(e1 + e2, e1 + e2), e1 + e2);
  EXPECT_EQ((e1 + e2).dim(), 2u);
  EXPECT_EQ(intersection(e1 + e2, e2 + e3), e2);
}

TEST(Linalg, RankNullityAndKernelProperty) {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const std::size_t r = 1 + rng.below(6), c = 1 + rng.below(6);
    const auto m = random_matrix(rng, r, c, Rational(0), rng.below(4) + 1);
    const auto k = kernel(m);
    EXPECT_EQ(rank(m) + k.dim(), c);
    for (const auto& v : k.basis()) EXPECT_TRUE(is_zero(m * v));
    const auto mp = random_matrix(rng, r, c, fp(0, 11), rng.below(4) + 1);
    EXPECT_EQ(rank(mp) + kernel(mp).dim(), c);
  }
}

TEST(Linalg, FractionFreeMatchesPlainElimination) {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto m = random_matrix(rng, 1 + rng.below(7), 1 + rng.below(7), Rational(0), 1 + rng.below(5));
    const auto a = detail::plain_rref(m), b = detail::bareiss_rref(m);
    EXPECT_EQ(a.pivots, b.pivots);
    EXPECT_EQ(a.reduced, b.reduced);
  }
}

TEST(Linalg, SolveAndInverse) {
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng.below(6);
    const auto m = random_matrix(rng, n, n, fp(0, 13));
    const Vec<ModP> x = random_vector(rng, n, fp(0, 13));
    const Vec<ModP> y = solve(m, m * x);
    EXPECT_EQ(m * y, m * x);
    if (rank(m) == n) EXPECT_EQ(inverse(m) * m, Matrix<ModP>::identity(n, fp(0, 13)));
    else EXPECT_THROW(inverse(m), DivisionByNonInvertible);
  }
  EXPECT_THROW(solve(diag({1, 0}), vec(Rational(0), {0, 1})), InconsistentSystem);
}

TEST(Linalg, SumAndIntersectionDimensions) {
  Rng rng(19);
  const Rational q(0);
  for (int i = 0; i < 100; ++i) {
    std::vector<Vec<Rational>> a, b;
    for (std::size_t k = rng.below(4); k-- > 0;) a.push_back(random_vector(rng, 5, q));
    for (std::size_t k = rng.below(4); k-- > 0;) b.push_back(random_vector(rng, 5, q));
    const auto u = Subspace<Rational>::span(5, a, q), w = Subspace<Rational>::span(5, b, q);
    const auto i_uw = intersection(u, w);
    EXPECT_EQ((u + w).dim() + i_uw.dim(), u.dim() + w.dim());
    EXPECT_TRUE(u.contains(i_uw));
    EXPECT_TRUE(w.contains(i_uw));
  }
}

TEST(Linalg, DoublePerpIsIdentity) {
  Rng rng(23);
  const Rational q(0);
  const auto g = standard_symplectic(3, q);
  for (int i = 0; i < 100; ++i) {
    std::vector<Vec<Rational>> a;
    for (std::size_t k = rng.below(6); k-- > 0;) a.push_back(random_vector(rng, 6, q));
    const auto w = Subspace<Rational>::span(6, a, q);
    const auto wp = symplectic_perp(w, g);
    EXPECT_EQ(w.dim() + wp.dim(), 6u);
    EXPECT_EQ(symplectic_perp(wp, g), w);
  }
}

TEST(Linalg, MinimalPolynomialAnnihilatesAndIsMinimal) {
  Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng.below(5);
    const auto m = random_matrix(rng, n, n, fp(0, 7), 1 + rng.below(n));
    const auto p = minimal_polynomial(m);
    EXPECT_EQ(p.back(), fp(1, 7));
    EXPECT_TRUE(eval_polynomial(p, m).is_zero());
    // no lower-degree polynomial kills m: I, m, ..., m^{d-1} are independent
    std::vector<Vec<ModP>> powers;
    Matrix<ModP> pw = Matrix<ModP>::identity(n, fp(0, 7));
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
      powers.push_back(pw.entries());
      pw = pw * m;
    }
    EXPECT_EQ(Subspace<ModP>::span(n * n, powers, fp(0, 7)).dim(), p.size() - 1);
  }
}

TEST(Linalg, SparseSystemMatchesDenseKernel) {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng.below(7);
    const auto m = random_matrix(rng, rng.below(7) + 1, n, Rational(0), 1 + rng.below(4));
    SparseSystem<Rational> sys(n, Rational(0));
    for (const auto& row : m.row_list()) {
      SparseSystem<Rational>::Row r;
      for (std::size_t j = 0; j < n; ++j)
        if (!row[j].is_zero()) r[j] = row[j];
      sys.add_equation(r);
    }
    EXPECT_EQ(sys.rank(), rank(m));
    const auto kb = sys.kernel_basis();
    EXPECT_EQ(Subspace<Rational>::span(n, kb, Rational(0)), kernel(m));
    for (const auto& row : m.row_list()) {
      SparseSystem<Rational>::Row r;
      for (std::size_t j = 0; j < n; ++j) r[j] = row[j];
      EXPECT_TRUE(sys.contains(r));
    }
  }
}

TEST(Linalg, SpanSolverCoordinates) {
  Rng rng(37);
  const Rational q(0);
  for (int i = 0; i < 100; ++i) {
    std::vector<Vec<Rational>> a;
    for (std::size_t k = 1 + rng.below(4); k-- > 0;) a.push_back(random_vector(rng, 6, q));
    if (Subspace<Rational>::span(6, a, q).dim() != a.size()) continue;
    const SpanSolver<Rational> s(a, q);
    Vec<Rational> c = random_vector(rng, a.size(), q), v = zeros(6, q);
    for (std::size_t j = 0; j < a.size(); ++j) axpy(v, c[j], a[j]);
    EXPECT_EQ(*s.coordinates(v), c);
    if (a.size() < 6) {
      // the dot-orthogonal complement meets the span only in 0 over Q
      const auto out = kernel(Matrix<Rational>::from_rows(a, 6, q)).basis()[0];
      EXPECT_FALSE(s.coordinates(v + out).has_value());
    }
  }
}
